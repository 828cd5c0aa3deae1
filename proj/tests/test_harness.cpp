#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cuelab/cue_model.hpp"
#include "cuelab/error.hpp"
#include "cuelab/experiments.hpp"
#include "cuelab/monte_carlo.hpp"
#include "cuelab/stats.hpp"

using namespace cuelab;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("run_mc on a constant functional") {
    const auto e = run_mc([](RngStream&) { return 2.5; }, {1, 100, 1});
    CHECK(e.mean == 2.5);
    CHECK(e.std_error == 0.0);
    CHECK(e.count == 100);
    CHECK_THROWS_AS(run_mc([](RngStream&) { return 1.0; }, {1, 1, 1}), DomainError);
}

TEST_CASE("run_mc is independent of the worker count") {
    auto fn = [](RngStream& s) { return f_value(sample_cue(8, s), 0.0, {1.0, 0.5}); };
    const auto one = run_mc(fn, {77, 3000, 1});
    const auto eight = run_mc(fn, {77, 3000, 8});
    CHECK(one.mean == eight.mean);
    CHECK(one.std_error == eight.std_error);
    const auto v1 = run_mc_vector([](RngStream& s) { return std::vector<double>{s.normal(), s.uniform()}; }, 2, {5, 999, 1});
    const auto v3 = run_mc_vector([](RngStream& s) { return std::vector<double>{s.normal(), s.uniform()}; }, 2, {5, 999, 3});
    for (int i = 0; i < 2; ++i) CHECK(v1[i].mean == v3[i].mean);
}

TEST_CASE("singular samples are redrawn, counted, and abort past 0.1%") {
    // fail on the first attempt of every 2000th index
    auto sometimes = [](RngStream& s) {
        if (s.stream_id() % 2000 == 0 && s.substream() == 0) throw SingularityError("hit");
        return static_cast<double>(s.substream());
    };
    const auto e = run_mc(sometimes, {1, 4000, 2});
    CHECK(e.failures == 2);
    CHECK(e.count == 4000);
    auto often = [](RngStream& s) {
        if (s.stream_id() % 100 == 0 && s.substream() == 0) throw SingularityError("hit");
        return 1.0;
    };
    CHECK_THROWS_AS(run_mc(often, {1, 4000, 2}), McAbort);
    auto other = [](RngStream&) -> double { throw std::runtime_error("boom"); };
    CHECK_THROWS_AS(run_mc(other, {1, 10, 2}), std::runtime_error);
}

TEST_CASE("ks_distance") {
    const std::vector<double> a{0.1, 0.5, 0.9, 1.3};
    CHECK(ks_distance(a, a) == 0.0);
    CHECK(ks_distance(a, std::vector<double>{5.0, 6.0}) == 1.0);
    CHECK_THROWS(ks_distance(a, std::vector<double>{}));

    std::vector<double> x, y;
    RngStream s(3, 0), t(4, 0);
    for (int i = 0; i < 2000; ++i) x.push_back(s.normal()), y.push_back(t.normal());
    const double crit = ks_critical_value(1e-3, 2000, 2000);
    CHECK(crit == doctest::Approx(0.0617).epsilon(2e-3));
    CHECK(ks_distance(x, y) < crit);
    // critical values of the Kolmogorov distribution
    CHECK(kolmogorov_tail(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(kolmogorov_tail(1.9495) == doctest::Approx(0.001).epsilon(5e-3));
}

TEST_CASE("experiment registry and config validation") {
    CHECK(experiment_names().size() == 11);
    for (const auto& name : experiment_names()) CHECK_NOTHROW(validate_config(default_config(name)));
    CHECK_THROWS_AS(default_config("nope"), ConfigError);

    auto field_of = [](const ExperimentConfig& c) {
        try {
            validate_config(c);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string();
    };
    auto c = default_config("main-theorem");
    c.alpha = -0.6;
    CHECK(field_of(c) == "alpha");
    c = default_config("main-theorem");
    c.beta = 1.5;
    CHECK(field_of(c) == "beta");
    c = default_config("hko-variance");
    c.samples = 1;
    CHECK(field_of(c) == "samples");
    c = default_config("fh-two-singularity");
    c.sizes = {2048};
    CHECK(field_of(c) == "sizes");
    c = default_config("kernel-decay");
    c.workers = 0;
    CHECK(field_of(c) == "workers");

    const auto j = nlohmann::json::parse(R"({"experiment": "ef-limit", "n": 64, "alpha": 0.5})");
    const auto parsed = config_from_json(j);
    CHECK(parsed.n == 64);
    CHECK(parsed.alpha == 0.5);
    CHECK(config_from_json(config_to_json(parsed)).n == 64);
    try {
        config_from_json(nlohmann::json::parse(R"({"experiment": "ef-limit", "bogus": 1})"));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "bogus");
    }
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n": -3})"), "ef-limit"), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"experiment": "ef-limit"})"), "strong-szego"), ConfigError);
}

TEST_CASE("reports embed config, build id and provenance; CSV bytes are reproducible") {
    auto c = default_config("hko-variance");
    c.samples = 400;
    const auto r1 = run_experiment(c);
    c.workers = 3;
    const auto r3 = run_experiment(c);
    CHECK(table_to_csv(r1.table("coefficient_variance")) == table_to_csv(r3.table("coefficient_variance")));

    const auto j = r1.to_json();
    CHECK(j.at("config").at("n") == 64);
    CHECK(j.at("build_id") == build_id());
    CHECK(!build_id().empty());
    for (const auto& ch : j.at("checks")) CHECK(!ch.at("oracle_provenance").get<std::string>().empty());

    const auto dir = std::filesystem::temp_directory_path() / "cuelab_report_test";
    std::filesystem::remove_all(dir);
    write_report(r1, dir);
    const std::string csv = slurp(dir / "hko-variance_coefficient_variance.csv");
    CHECK(csv.rfind("j,variance,se,oracle\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    write_report(r3, dir / "again");
    CHECK(slurp(dir / "again" / "hko-variance_coefficient_variance.csv") == csv);
    CHECK(nlohmann::json::parse(slurp(dir / "hko-variance.json")).at("experiment") == "hko-variance");
    std::filesystem::remove_all(dir);
}

TEST_CASE("clt-traces: Gaussian moments of normalized traces") {
    const auto r = run_experiment(default_config("clt-traces"));
    for (const auto& ch : r.checks) {
        CAPTURE(ch.name);
        CAPTURE(ch.value);
        CAPTURE(ch.oracle);
        CHECK(ch.pass);
    }
}

TEST_CASE("ef-limit at n = 4096") {
    auto c = default_config("ef-limit");
    CHECK(c.n == 4096);
    CHECK(run_experiment(c).passed());
}

TEST_CASE("kernel-decay is decreasing over k = 8..64") {
    const auto r = run_experiment(default_config("kernel-decay"));
    CHECK(r.check("strictly_decreasing_in_k").pass);
    CHECK(r.table("variance_vs_k").rows.size() == 4);
}
