#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "cwork/cwp.hpp"
#include "cwork/io.hpp"
#include "cwork/ladder.hpp"

using namespace cwork;

namespace {

LadderState sqrt_state(const EnergyDistribution& p) {
    std::vector<Complex> amps(static_cast<std::size_t>(p.size()));
    for (int i = 0; i < p.size(); ++i) {
        amps[static_cast<std::size_t>(i)] = Complex(std::sqrt(p.weights[static_cast<std::size_t>(i)]), 0.0);
    }
    return LadderState::from(p.offset, std::move(amps));
}

} // namespace

// ------------------------------------------------------------ primitives ----

TEST_CASE("states round trip through their serialized form") {
    const auto psi = LadderState::from(
        -2, {Complex(0.6, 0.0), Complex(0.0, 0.48), Complex(0.64, 0.0)});
    const auto back = state_from_json(state_to_json(psi));
    CHECK(back.offset == psi.offset);
    REQUIRE(back.size() == psi.size());
    for (int i = 0; i < psi.size(); ++i) {
        CHECK(std::abs(back.amplitudes[static_cast<std::size_t>(i)] -
                       psi.amplitudes[static_cast<std::size_t>(i)]) <= 1e-15);
    }
    CHECK(fidelity(back, psi) >= 1.0 - 1e-12);
}

TEST_CASE("a bounded spectrum survives the round trip") {
    const EnergySpectrum spectrum{0, {0.0, 0.5, 1.7}};
    const double s = 1.0 / std::sqrt(3.0);
    const auto psi =
        LadderState::from(0, {Complex(s, 0), Complex(s, 0), Complex(s, 0)}, spectrum);
    const auto back = state_from_json(state_to_json(psi));
    REQUIRE_FALSE(back.spectrum.is_unit());
    CHECK(back.spectrum.lo == 0);
    CHECK(back.spectrum.levels == spectrum.levels);
    CHECK(back.mean_energy() == doctest::Approx(psi.mean_energy()).epsilon(1e-12));
}

TEST_CASE("distributions round trip through their serialized form") {
    const auto p = EnergyDistribution::from(3, {0.25, 0.5, 0.25});
    const auto back = distribution_from_json(distribution_to_json(p));
    CHECK(back.offset == 3);
    REQUIRE(back.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(back.weights[static_cast<std::size_t>(i)] ==
              doctest::Approx(p.weights[static_cast<std::size_t>(i)]).epsilon(1e-15));
    }
}

TEST_CASE("malformed payloads are refused with the offending field named") {
    CHECK_THROWS_WITH_AS(state_from_json(Json::array()), doctest::Contains("state"), Error);
    CHECK_THROWS_WITH_AS(state_from_json(Json{{"offset", "x"}, {"amplitudes", Json::array()}}),
                         doctest::Contains("offset"), Error);
    CHECK_THROWS_WITH_AS(state_from_json(Json{{"offset", 0}}),
                         doctest::Contains("amplitudes"), Error);
    CHECK_THROWS_WITH_AS(
        state_from_json(Json{{"offset", 0}, {"amplitudes", Json::array({Json::array({1.0})})}}),
        doctest::Contains("amplitudes"), Error);
    CHECK_THROWS_WITH_AS(distribution_from_json(Json{{"offset", 0}, {"weights", "zzz"}}),
                         doctest::Contains("weights"), Error);
    CHECK_THROWS_WITH_AS(distribution_from_json(Json{{"weights", Json::array({1.0})}}),
                         doctest::Contains("offset"), Error);
}

// --------------------------------------------------------------- records ----

TEST_CASE("a process record rebuilds into the same unitary and behavior") {
    const auto q = EnergyDistribution::from(1, {0.4, 0.6});
    const auto r = EnergyDistribution::from(-1, {0.5, 0.5});
    const auto p = convolve(q, r);
    const std::vector<double> phases_q{0.3, 1.1};
    const auto v = build_cwp_unitary(p, q, r, phases_q, {});
    const auto record = apply_cwp(v, sqrt_state(p));

    const Json j = cwp_record_to_json(record, v);
    const auto stored = cwp_record_from_json(j);
    CHECK((stored.unitary.u.dense() - v.u.dense()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(stored.unitary.windows.s_lo == v.windows.s_lo);
    CHECK(stored.unitary.windows.a_hi == v.windows.a_hi);
    CHECK(fidelity(stored.record.output, record.output) >= 1.0 - 1e-12);
    CHECK(fidelity(stored.record.work, record.work) >= 1.0 - 1e-12);
    CHECK(stored.record.product_fidelity == doctest::Approx(record.product_fidelity));

    // the rebuilt unitary acts identically
    const auto replay = apply_cwp(stored.unitary, stored.record.input);
    CHECK(fidelity(replay.output, record.output) >= 1.0 - 1e-12);
    CHECK(fidelity(replay.work, record.work) >= 1.0 - 1e-12);
}

TEST_CASE("factor pairs and search results serialize their members") {
    const auto first = EnergyDistribution::from(0, {0.5, 0.5});
    const auto second = EnergyDistribution::from(2, {0.5, 0.0, 0.5});
    const FactorPair pair{first, second, 3e-12};
    const Json j = factor_pair_to_json(pair);
    CHECK(j.at("residual").get<double>() == doctest::Approx(3e-12));
    const auto f_back = distribution_from_json(j.at("first"));
    CHECK(f_back.offset == 0);

    DeconvolveResult result;
    result.factors.push_back(pair);
    result.exhaustive = true;
    result.decomposable = true;
    const Json rj = deconvolve_result_to_json(result);
    CHECK(rj.at("exhaustive").get<bool>());
    CHECK(rj.at("decomposable").get<bool>());
    REQUIRE(rj.at("factors").size() == 1);
}

TEST_CASE("transition reports expose every recorded quantity") {
    CrooksReport rep;
    rep.beta = 0.7;
    rep.forward = 0.25;
    rep.reverse = 0.125;
    rep.lhs_ratio = 2.0;
    rep.rhs_exponent = std::log(2.0);
    rep.agreement = 1e-12;
    rep.delta_f = 0.4;
    rep.lambda0 = 0.1;
    rep.lambda1 = 0.2;
    const Json j = crooks_report_to_json(rep);
    CHECK(j.at("beta").get<double>() == doctest::Approx(0.7));
    CHECK(j.at("forward").get<double>() == doctest::Approx(0.25));
    CHECK(j.at("lhs_ratio").get<double>() == doctest::Approx(2.0));
    CHECK(j.at("agreement").get<double>() == doctest::Approx(1e-12));
}

// ----------------------------------------------------------------- files ----

TEST_CASE("file loading distinguishes missing files from bad content") {
    CHECK_THROWS_AS(load_json_file("/nonexistent/nowhere.json"), IoError);
    const std::string path = "io_test_malformed.json";
    write_text_file(path, "{ not json");
    CHECK_THROWS_WITH_AS(load_json_file(path), doctest::Contains("malformed"), Error);
    write_text_file(path, "{\"a\": 1}\n");
    CHECK(load_json_file(path).at("a").get<int>() == 1);
    std::remove(path.c_str());
}

TEST_CASE("unwritable destinations are reported as file errors") {
    CHECK_THROWS_AS(write_text_file("/nonexistent/dir/out.json", "x"), IoError);
}

// ----------------------------------------------------------------- hashes ---

TEST_CASE("configuration hashes are stable and key order blind") {
    const Json a{{"beta", 1.0}, {"seed", 7}};
    const Json b{{"seed", 7}, {"beta", 1.0}};
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    const Json c{{"beta", 1.0}, {"seed", 8}};
    CHECK(config_hash(a) != config_hash(c));
}

// ------------------------------------------------------------- formatting ---

TEST_CASE("numeric cells round trip exactly") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 123456.789, 0.0, 8.3e-6}) {
        const std::string s = format_double(x);
        double back = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(ec == std::errc{});
        CHECK(ptr == s.data() + s.size());
        CHECK(back == x);
    }
}

TEST_CASE("the tolerance table names every gate") {
    const Json t = tolerance_set();
    CHECK(t.contains("unitarity"));
    CHECK(t.contains("commutation"));
    CHECK(t.contains("crooks_agreement"));
    CHECK(t.contains("cumulant_agreement"));
    CHECK(t.at("unitarity").get<double>() == doctest::Approx(1e-10));
}
