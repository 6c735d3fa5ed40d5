#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "pulsemax/errors.hpp"
#include "pulsemax/event_series.hpp"
#include "pulsemax/random.hpp"
#include "pulsemax/series_io.hpp"
#include "support/chi2_oracle.hpp"

using namespace pulsemax;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& body) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << body;
    return p;
}

}  // namespace

TEST_CASE("make_series enforces ordering, trigger, and span") {
    std::vector<EventRecord> ok = {{0.5, 100.0}, {0.7, 120.0}, {1.5, 90.0}};
    const EventSeries s = make_series(ok, 2.0, 90.0);
    CHECK(s.size() == 3);
    CHECK(s.times() == std::vector<double>{0.5, 0.7, 1.5});
    CHECK(s.magnitudes() == std::vector<double>{100.0, 120.0, 90.0});

    CHECK_THROWS_AS(make_series({{0.5, 100.0}, {0.5, 110.0}}, 2.0, 0.0), DataError);
    CHECK_THROWS_AS(make_series({{0.7, 100.0}, {0.5, 110.0}}, 2.0, 0.0), DataError);
    CHECK_THROWS_AS(make_series({{0.5, 80.0}}, 2.0, 90.0), DataError);
    CHECK_THROWS_AS(make_series({{0.5, 100.0}}, 0.4, 0.0), DataError);
    CHECK_THROWS_AS(make_series({{-0.1, 100.0}}, 2.0, 0.0), DataError);
}

TEST_CASE("load_events parses the CSV contract") {
    const auto p = write_temp("pm_ok.csv",
                              "time_hours,peak\n0.5,100\n0.7,120\n1.5,90\n");
    const EventSeries s = load_events(p);
    CHECK(s.size() == 3);
    CHECK(s.observation_span == doctest::Approx(1.5));
    CHECK(s.trigger_level == doctest::Approx(90.0));
    fs::remove(p);
}

TEST_CASE("load_events reports the offending line") {
    const auto p = write_temp("pm_bad.csv",
                              "time_hours,peak\n0.5,100\nabc,120\n");
    try {
        load_events(p);
        FAIL("expected a parse error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
    fs::remove(p);
}

TEST_CASE("load_events rejects a wrong header, duplicates, and empty input") {
    const auto bad_header = write_temp("pm_hdr.csv", "t,peak\n0.5,100\n");
    CHECK_THROWS_AS(load_events(bad_header), DataError);
    fs::remove(bad_header);

    const auto dup = write_temp("pm_dup.csv",
                                "time_hours,peak\n0.5,100\n0.5,120\n");
    CHECK_THROWS_AS(load_events(dup), DataError);
    fs::remove(dup);

    const auto empty = write_temp("pm_empty.csv", "time_hours,peak\n");
    CHECK_THROWS_AS(load_events(empty), DataError);
    fs::remove(empty);
}

TEST_CASE("load_events sorts unsorted rows and says so") {
    const auto p = write_temp("pm_unsorted.csv",
                              "time_hours,peak\n1.5,90\n0.5,100\n");
    std::vector<std::string> warnings;
    const EventSeries s = load_events(p, std::nullopt, &warnings);
    CHECK(s.times() == std::vector<double>{0.5, 1.5});
    CHECK(warnings.size() == 1);
    fs::remove(p);
}

TEST_CASE("save then load round-trips exactly") {
    std::vector<EventRecord> recs;
    RandomStream rng(5);
    double t = 0.0;
    for (int i = 0; i < 50; ++i) {
        t += rng.exponential(0.37);
        recs.push_back({t, 90.0 + rng.exponential(17.0)});
    }
    const EventSeries s = make_series(recs, t, 90.0);
    const fs::path p = fs::temp_directory_path() / "pm_roundtrip.csv";
    save_events(s, p);
    const EventSeries r = load_events(p, 90.0);
    REQUIRE(r.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(r.records[i].time == s.records[i].time);
        CHECK(r.records[i].magnitude == s.records[i].magnitude);
    }
    fs::remove(p);
}

TEST_CASE("filter_above keeps strict exceedances and composes") {
    const EventSeries s =
        make_series({{1.0, 90.0}, {2.0, 100.0}, {3.0, 110.0}}, 3.0, 90.0);
    const EventSeries f = filter_above(s, 95.0);
    CHECK(f.size() == 2);
    CHECK(f.trigger_level == doctest::Approx(95.0));
    CHECK(f.observation_span == doctest::Approx(3.0));

    const EventSeries g = filter_above(filter_above(s, 95.0), 105.0);
    const EventSeries h = filter_above(s, 105.0);
    CHECK(g.size() == h.size());
    CHECK(g.records[0].time == h.records[0].time);

    CHECK(filter_above(s, 110.0).empty());
    CHECK_THROWS_AS(filter_above(f, 90.0), DataError);
}

TEST_CASE("interarrival times sum to the elapsed window") {
    const EventSeries s =
        make_series({{0.0, 1.0}, {1.0, 1.0}, {3.0, 1.0}}, 3.0, 1.0);
    const auto d = interarrival_times(s);
    CHECK(d == std::vector<double>{1.0, 2.0});

    RandomStream rng(9);
    std::vector<EventRecord> recs;
    double t = 0.0;
    for (int i = 0; i < 200; ++i) {
        t += rng.exponential(0.5);
        recs.push_back({t, 1.0});
    }
    const EventSeries big = make_series(recs, t, 1.0);
    const auto gaps = interarrival_times(big);
    double sum = 0.0;
    for (double g : gaps) sum += g;
    CHECK(sum == doctest::Approx(big.records.back().time -
                                 big.records.front().time).epsilon(1e-12));

    CHECK_THROWS_AS(interarrival_times(make_series({{1.0, 1.0}}, 1.0, 1.0)),
                    DataError);
}

TEST_CASE("chi-squared statistic is zero when counts match exactly") {
    // durations placed at the (i - 0.5)/n quantiles of the fitted law land
    // n/B observations in every equal-probability bin
    const int n = 60, bins = 10;
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i)
        d[i] = -std::log(1.0 - (i + 0.5) / n);
    const ChiSquaredResult r = chi_squared_exponential_test(d, bins);
    CHECK(r.statistic == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.degrees_of_freedom == bins - 2);
    CHECK(r.significance == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chi-squared statistic and tail match an independent recomputation") {
    RandomStream rng(1234);
    std::vector<double> d;
    for (int i = 0; i < 200; ++i) d.push_back(rng.exponential(3.0));
    const ChiSquaredResult r = chi_squared_exponential_test(d, 8);
    int dof = 0;
    const double stat = oracle::chi2_exponential_statistic(d, 8, &dof);
    CHECK(r.statistic == doctest::Approx(stat).epsilon(1e-10));
    CHECK(r.degrees_of_freedom == dof);
    CHECK(r.significance ==
          doctest::Approx(oracle::chi2_upper_tail(dof, stat)).epsilon(1e-9));
}

TEST_CASE("chi-squared test is calibrated on exponential data") {
    int above = 0;
    const int reps = 100;
    for (int seed = 0; seed < reps; ++seed) {
        RandomStream rng(1000 + seed);
        std::vector<double> d;
        for (int i = 0; i < 500; ++i) d.push_back(rng.exponential(1.0));
        if (chi_squared_exponential_test(d, 10).significance > 0.01) ++above;
    }
    CHECK(above >= 95);
}

TEST_CASE("chi-squared test rejects clearly non-exponential durations") {
    std::vector<double> d(400, 1.0);  // constant spacing
    for (int i = 0; i < 400; i += 2) d[i] = 1.001;
    const ChiSquaredResult r = chi_squared_exponential_test(d, 10);
    CHECK(r.significance < 1e-6);
}

TEST_CASE("chi-squared merges sparse tail bins and keeps the bin floor") {
    RandomStream rng(77);
    std::vector<double> d;
    for (int i = 0; i < 20; ++i) d.push_back(rng.exponential(1.0));
    // 2 expected per bin; the right merge stops once the tail bin reaches 6
    CHECK(chi_squared_exponential_test(d, 10).degrees_of_freedom == 6);

    std::vector<double> tiny(d.begin(), d.begin() + 6);
    // 0.6 expected per bin can never reach 5; the 3-bin floor holds
    CHECK(chi_squared_exponential_test(tiny, 10).degrees_of_freedom == 1);

    CHECK_THROWS_AS(chi_squared_exponential_test(d, 2), std::invalid_argument);
}

TEST_CASE("block maxima split at block boundaries") {
    const EventSeries s =
        make_series({{0.5, 100.0}, {0.7, 120.0}, {1.5, 90.0}}, 1.5, 90.0);
    const BlockMaxima bm = block_maxima(s, 1.0);
    REQUIRE(bm.count() == 2);
    CHECK(*bm.values[0] == doctest::Approx(120.0));
    CHECK(*bm.values[1] == doctest::Approx(90.0));

    const BlockMaxima whole = block_maxima(s, 10.0);
    REQUIRE(whole.count() == 1);
    CHECK(*whole.values[0] == doctest::Approx(120.0));
}

TEST_CASE("block maxima mark empty blocks") {
    const EventSeries s = make_series({{2.5, 50.0}}, 2.5, 50.0);
    const BlockMaxima bm = block_maxima(s, 1.0);
    REQUIRE(bm.count() == 3);
    CHECK(!bm.values[0].has_value());
    CHECK(!bm.values[1].has_value());
    CHECK(*bm.values[2] == doctest::Approx(50.0));
}

TEST_CASE("empirical CDF uses the n+1 denominator and counts ties") {
    const std::vector<double> m = {1.0, 2.0, 3.0};
    CHECK(empirical_cdf(m, 0.5) == doctest::Approx(0.0));
    CHECK(empirical_cdf(m, 2.0) == doctest::Approx(2.0 / 4.0));
    CHECK(empirical_cdf(m, 2.5) == doctest::Approx(2.0 / 4.0));
    CHECK(empirical_cdf(m, 3.0) == doctest::Approx(3.0 / 4.0));
    CHECK(empirical_cdf(m, 99.0) == doctest::Approx(3.0 / 4.0));
    CHECK_THROWS_AS(empirical_cdf({}, 1.0), DataError);
}
