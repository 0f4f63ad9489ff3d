#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "randq/oracles.hpp"

using namespace randq;

namespace {

StateVector random_state(int k, Rng& rng)
{
    std::vector<Complex> amp(std::uint64_t{1} << k);
    double norm = 0.0;
    for (auto& a : amp) {
        a = Complex(rng.normal(), rng.normal());
        norm += std::norm(a);
    }
    for (auto& a : amp) a /= std::sqrt(norm);
    return StateVector::from_amplitudes(std::move(amp));
}

double distance(const StateVector& a, const StateVector& b)
{
    double s = 0.0;
    for (std::uint64_t i = 0; i < a.dimension(); ++i) s += std::norm(a.amplitude(i) - b.amplitude(i));
    return std::sqrt(s);
}

BooleanTable random_table(std::uint64_t n, double density, Rng& rng)
{
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = rng.uniform() < density ? 1 : 0;
    return BooleanTable(std::move(bits));
}

} // namespace

TEST_CASE("tables validate their invariants")
{
    CHECK_THROWS_AS(BooleanTable({0, 1, 1}), OracleError);
    CHECK_THROWS_AS(BooleanTable({0}), OracleError);
    CHECK_THROWS_AS(BooleanTable({0, 2}), OracleError);
    CHECK(BooleanTable({0, 1, 1, 0}).mean() == 0.5);
    CHECK_THROWS_AS(RealTable({0.5, 1.2}), OracleError);
    CHECK(RealTable({0.25, 0.75, 0.5}).mean() == doctest::Approx(0.5));
}

TEST_CASE("table text format round-trips")
{
    std::stringstream in("4\n0\n1\n1\n0\n");
    const BooleanTable b = read_boolean_table(in);
    CHECK(b.ones() == 2);
    std::stringstream out;
    write_table(out, b);
    CHECK(out.str() == "4\n0\n1\n1\n0\n");

    std::stringstream rin("3\n0.125\n1\n0.3\n");
    const RealTable r = read_real_table(rin);
    CHECK(r[2] == 0.3);
    std::stringstream rout;
    write_table(rout, r);
    const RealTable again = read_real_table(rout);
    CHECK(std::equal(r.values().begin(), r.values().end(), again.values().begin()));

    std::stringstream bad("2\n0\nx\n");
    CHECK_THROWS_AS(read_boolean_table(bad), OracleError);
    std::stringstream shortfile("4\n0.1\n");
    CHECK_THROWS_AS(read_real_table(shortfile), OracleError);
}

TEST_CASE("bit query")
{
    const RegisterLayout layout{3, 1, 0};
    Rng rng(4);

    BitQueryOracle zero = BitQueryOracle::boolean(BooleanTable(std::vector<std::uint8_t>(8, 0)));
    const StateVector r = random_state(4, rng);
    StateVector s = r;
    apply_bit_query(s, zero, layout);
    CHECK(distance(r, s) == 0.0);

    std::vector<std::uint8_t> bits(8, 0);
    bits[3] = 1;
    BitQueryOracle q = BitQueryOracle::boolean(BooleanTable(bits));
    StateVector b = new_basis_state(4, layout.index().place(3));
    apply_bit_query(b, q, layout);
    CHECK(b.amplitude(layout.index().place(3) | layout.value().place(1)) == Complex(1.0));

    BitQueryOracle f = BitQueryOracle::boolean(random_table(8, 0.5, rng));
    StateVector twice = r;
    apply_bit_query(twice, f, layout);
    apply_bit_query(twice, f, layout);
    CHECK(distance(r, twice) < kIdentityTolerance);

    StateVector wrong = new_basis_state(5, 0);
    CHECK_THROWS_AS(apply_bit_query(wrong, f, RegisterLayout{2, 1, 0}), OracleError);
}

TEST_CASE("real bit query adds modulo 2^m2")
{
    const RegisterLayout layout{1, 2, 0};
    // beta(f(tau(j))) = 3 for j = 1
    BitQueryOracle q = BitQueryOracle::from_coded(2, {0, 3}, {SamplePoint{0, {}}, SamplePoint{1, {}}});
    StateVector s = new_basis_state(3, layout.index().place(1) | layout.value().place(2));
    apply_real_bit_query(s, q, layout);
    CHECK(s.amplitude(layout.index().place(1) | layout.value().place(1)) == Complex(1.0));

    Rng rng(8);
    const StateVector r = random_state(3, rng);
    StateVector round = r;
    apply_real_bit_query(round, q, layout);
    apply_real_bit_query(round, q, layout, 0, true);
    CHECK(distance(r, round) < kIdentityTolerance);

    BitQueryOracle none = BitQueryOracle::from_coded(2, {0, 0}, {SamplePoint{0, {}}, SamplePoint{1, {}}});
    StateVector same = r;
    apply_real_bit_query(same, none, layout);
    CHECK(distance(r, same) == 0.0);

    CHECK_THROWS_AS(BitQueryOracle::from_coded(2, {0, 4}, {SamplePoint{}, SamplePoint{}}), OracleError);

    CodingMaps coding{4, CodingMode::truncate, {}};
    BitQueryOracle real = BitQueryOracle::real(RealTable({0.0, 0.5, 0.8, 1.0}), coding);
    CHECK(real.coded_value(1) == 8);
    CHECK(real.coded_value(2) == 12);
    CHECK(real.coded_value(3) == 15);
}

TEST_CASE("truncate_beta")
{
    CHECK(truncate_beta(0.0, 5) == 0);
    CHECK(truncate_beta(1.0, 3) == 7);
    CHECK(truncate_beta(0.5, 4) == 8);
    CHECK_THROWS_AS(truncate_beta(-0.1, 3), OracleError);
    CHECK_THROWS_AS(truncate_beta(1.5, 3), OracleError);
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform();
        const int m2 = 1 + static_cast<int>(rng.uniform_index(20));
        const double back = std::ldexp(static_cast<double>(truncate_beta(v, m2)), -m2);
        CHECK(std::abs(v - back) <= std::ldexp(1.0, -m2));
    }

    const CodingMaps exact{3, CodingMode::exact, {}};
    CHECK(exact.beta(0.375) == 3);
    CHECK_THROWS_AS(exact.beta(0.3), OracleError);
    CHECK_THROWS_AS(exact.beta(1.0), OracleError);
}

TEST_CASE("phase flip query")
{
    const Register index{0, 3};
    Rng rng(12);
    const StateVector r = random_state(3, rng);

    BitQueryOracle zero = BitQueryOracle::boolean(BooleanTable(std::vector<std::uint8_t>(8, 0)));
    StateVector s = r;
    phase_flip_query(s, zero, index);
    CHECK(distance(r, s) == 0.0);

    BitQueryOracle ones = BitQueryOracle::boolean(BooleanTable(std::vector<std::uint8_t>(8, 1)));
    StateVector g = r;
    phase_flip_query(g, ones, index);
    for (std::uint64_t i = 0; i < 8; ++i) CHECK(g.amplitude(i) == -r.amplitude(i));

    // single marked element against diag(1 - 2 delta_{j,5}) applied to the uniform state
    std::vector<std::uint8_t> bits(8, 0);
    bits[5] = 1;
    BitQueryOracle marked = BitQueryOracle::boolean(BooleanTable(bits));
    StateVector u = new_basis_state(3, 0);
    apply_hadamard_all(u, index);
    phase_flip_query(u, marked, index);
    for (std::uint64_t i = 0; i < 8; ++i) {
        double row = 0.0;
        for (std::uint64_t j = 0; j < 8; ++j) row += (i == j ? (i == 5 ? -1.0 : 1.0) : 0.0) / std::sqrt(8.0);
        CHECK(std::abs(u.amplitude(i) - Complex(row)) < 1e-15);
    }
    CHECK(query_count(marked) == 1);

    BitQueryOracle real = BitQueryOracle::from_coded(2, {0, 1}, {SamplePoint{}, SamplePoint{}});
    StateVector t = new_basis_state(1, 0);
    CHECK_THROWS_AS(phase_flip_query(t, real, {0, 1}), OracleError);
}

TEST_CASE("query counting")
{
    BitQueryOracle q = BitQueryOracle::boolean(BooleanTable({0, 1}));
    CHECK(query_count(q) == 0);
    StateVector s = new_basis_state(3, 0);
    const RegisterLayout layout{1, 1, 1};
    apply_bit_query(s, q, layout);
    apply_bit_query(s, q, layout, layout.phase().mask());
    apply_real_bit_query(s, q, layout, 0, true);
    CHECK(query_count(q) == 3);
    q.record_applications(4);
    CHECK(query_count(q) == 7);
}

TEST_CASE("randomized subsample oracle")
{
    Rng gen(5);
    const BooleanTable f = random_table(64, 0.3, gen);

    // identity draw with m = N reproduces the deterministic query
    RandomizedOracleFactory identity(
        IdentityIndexDraw{64}, [&f](const SamplePoint& p) -> std::uint64_t { return f[p.index]; }, 1, 64);
    Rng r0(1);
    const BitQueryOracle same = identity.draw(r0);
    const BitQueryOracle det = BitQueryOracle::boolean(f);
    CHECK(std::equal(same.coded_values().begin(), same.coded_values().end(), det.coded_values().begin()));
    CHECK(std::equal(same.sample_points().begin(), same.sample_points().end(), det.sample_points().begin()));

    Rng a(77);
    Rng b(77);
    const BitQueryOracle qa = make_randomized_subsample_oracle(f, 16, a);
    const BitQueryOracle qb = make_randomized_subsample_oracle(f, 16, b);
    CHECK(qa.index_width() == 4);
    CHECK(std::equal(qa.sample_points().begin(), qa.sample_points().end(), qb.sample_points().begin()));

    // index width depends on m only
    const BooleanTable big = random_table(1024, 0.3, gen);
    Rng c(3);
    CHECK(make_randomized_subsample_oracle(big, 16, c).index_width() == 4);

    // padding to a power of two repeats realized draws
    Rng d(9);
    const BitQueryOracle padded = make_randomized_subsample_oracle(f, 5, d);
    CHECK(padded.size() == 8);
    std::set<std::uint64_t> first;
    for (int l = 0; l < 5; ++l) first.insert(padded.sample_points()[l].index);
    for (int l = 5; l < 8; ++l) CHECK(first.count(padded.sample_points()[l].index) == 1);

    CHECK_THROWS_AS(make_randomized_subsample_oracle(f, 0, d), OracleError);
}

TEST_CASE("randomized subsample oracle is unbiased")
{
    Rng gen(101);
    const BooleanTable f = random_table(256, 0.37, gen);
    const double truth = f.mean();
    Rng rng(55);
    const int trials = 1 << 16;
    const std::uint64_t m = 16; // 2^20 sampled values in total
    double sum = 0.0;
    for (int i = 0; i < trials; ++i) sum += make_randomized_subsample_oracle(f, m, rng).marked_fraction();
    const double mean = sum / trials;
    const double sigma = std::sqrt(truth * (1 - truth) / (trials * static_cast<double>(m)));
    CHECK(std::abs(mean - truth) <= 3.0 * sigma);
}

TEST_CASE("identical queries give identical final states")
{
    Rng gen(8);
    const BooleanTable f1 = random_table(64, 0.5, gen);
    Rng draw1(400);
    const BitQueryOracle q1 = make_randomized_subsample_oracle(f1, 8, draw1);

    std::set<std::uint64_t> seen;
    for (const SamplePoint& p : q1.sample_points()) seen.insert(p.index);
    std::vector<std::uint8_t> bits(f1.bits().begin(), f1.bits().end());
    int changed = 0;
    for (std::uint64_t j = 0; j < 64; ++j) {
        if (!seen.count(j)) {
            bits[j] ^= 1;
            ++changed;
        }
    }
    REQUIRE(changed > 0);
    const BooleanTable f2(bits);
    Rng draw2(400);
    BitQueryOracle q2 = make_randomized_subsample_oracle(f2, 8, draw2);
    BitQueryOracle q1c = q1;

    const RegisterLayout layout{3, 1, 0};
    auto run = [&](BitQueryOracle& q) {
        StateVector s = new_basis_state(4, 0);
        apply_hadamard_all(s, layout.index());
        apply_bit_query(s, q, layout);
        apply_hadamard_all(s, layout.index());
        apply_bit_query(s, q, layout);
        return s;
    };
    CHECK(distance(run(q1c), run(q2)) < kIdentityTolerance);
}
