#include <cstring>
#include <numbers>
#include <random>

#include "cvrep/circuit.hpp"
#include "cvrep/library.hpp"
#include "cvrep/protocol.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cvrep;
using std::numbers::sqrt2;

namespace {

double random_number(std::mt19937_64 &rng) {
    // Mix short decimals with full-precision doubles to exercise the printer.
    std::uniform_real_distribution<double> u(-3, 3);
    double v = u(rng);
    return rng() % 2 ? v : std::round(v * 4) / 4;
}

Op random_unitary_op(const std::vector<int> &wires, std::mt19937_64 &rng) {
    const int n = static_cast<int>(wires.size());
    int a = wires[rng() % n];
    int b = wires[(std::find(wires.begin(), wires.end(), a) - wires.begin() + 1 + rng() % (n - 1)) % n];
    double v = random_number(rng);
    switch (rng() % 10) {
        case 0:
            return Qnd{a, b, v};
        case 1:
            return BeamSplitterPM{a, b};
        case 2:
            return BeamSplitter{a, b, v};
        case 3:
            return SqueezeFactor{a, v == 0 ? 0.5 : v};
        case 4:
            return TwoModeSqueeze{a, b, v / 3};
        case 5:
            return PhaseShift{a, v};
        case 6:
            return Fourier{a};
        case 7:
            return InverseFourier{a};
        case 8:
            return Pi{a};
        default:
            return Swap{a, b};
    }
}

Circuit random_unitary_circuit(std::mt19937_64 &rng, int n, int length) {
    Circuit c;
    for (int i = 0; i < n; ++i) {
        c.wires.push_back(2 * i + 1);  // non-contiguous labels on purpose
    }
    for (int i = 0; i < length; ++i) {
        c.ops.push_back(random_unitary_op(c.wires, rng));
    }
    return c;
}

/// Applies a unitary circuit op by op through the state-level gate functions.
GaussianState apply_by_gates(const Circuit &c, GaussianState s) {
    auto pos = [&](int w) { return static_cast<int>(std::find(c.wires.begin(), c.wires.end(), w) - c.wires.begin()); };
    for (const Op &op : c.ops) {
        if (auto *g = std::get_if<Qnd>(&op)) {
            s = qnd(s, pos(g->control), pos(g->target), g->gain);
        } else if (auto *g = std::get_if<BeamSplitterPM>(&op)) {
            s = beam_splitter_pm(s, pos(g->a), pos(g->b));
        } else if (auto *g = std::get_if<BeamSplitter>(&op)) {
            s = beam_splitter(s, pos(g->a), pos(g->b), g->angle);
        } else if (auto *g = std::get_if<SqueezeFactor>(&op)) {
            s = squeeze_by_factor(s, pos(g->mode), g->factor);
        } else if (auto *g = std::get_if<TwoModeSqueeze>(&op)) {
            s = two_mode_squeeze(s, pos(g->a), pos(g->b), g->r);
        } else if (auto *g = std::get_if<PhaseShift>(&op)) {
            s = phase_shift(s, pos(g->mode), g->phi);
        } else if (auto *g = std::get_if<Fourier>(&op)) {
            s = fourier(s, pos(g->mode));
        } else if (auto *g = std::get_if<InverseFourier>(&op)) {
            s = inverse_fourier(s, pos(g->mode));
        } else if (auto *g = std::get_if<Pi>(&op)) {
            s = pi_gate(s, pos(g->mode));
        } else if (auto *g = std::get_if<Swap>(&op)) {
            s = swap_modes(s, pos(g->a), pos(g->b));
        }
    }
    return s;
}

MatrixXd a_matrix(std::initializer_list<double> values) {
    MatrixXd m(3, 3);
    auto it = values.begin();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m(i, j) = *it++;
        }
    }
    return m;
}

bool bit_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof a) == 0;
}

}  // namespace

TEST_CASE("text round trip is bit stable") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c = random_unitary_circuit(rng, 2 + static_cast<int>(rng() % 4), 12);
        c.ops.push_back(Displace{c.wires[0], {random_number(rng), random_number(rng)}});
        c.ops.push_back(Measure{c.wires[0], Quadrature::p, "m"});
        c.ops.push_back(FeedforwardDisplace{"m", c.wires[1], Quadrature::x, random_number(rng)});
        c.ops.push_back(Discard{c.wires[1]});
        std::string text = to_text(c);
        Circuit back = parse_circuit(text);
        CHECK(back.wires == c.wires);
        REQUIRE(back.ops.size() == c.ops.size());
        CHECK(to_text(back) == text);
        for (std::size_t i = 0; i < c.ops.size(); ++i) {
            if (auto *q = std::get_if<Qnd>(&c.ops[i])) {
                CHECK(bit_equal(std::get<Qnd>(back.ops[i]).gain, q->gain));
            }
            if (auto *b = std::get_if<BeamSplitter>(&c.ops[i])) {
                CHECK(bit_equal(std::get<BeamSplitter>(back.ops[i]).angle, b->angle));
            }
        }
    }
}

TEST_CASE("parser accepts comments, blank lines and fractions") {
    Circuit c = parse_circuit(
        "# decoder\n"
        "MODES 2 3 4\n"
        "\n"
        "QND c=4 t=3 gain=-1   # first gate\n"
        "QND c=3 t=4 gain=1/2\n"
        "SQZ mode=2 factor=-7/4\n");
    CHECK(c.wires == std::vector<int>{2, 3, 4});
    REQUIRE(c.ops.size() == 3);
    CHECK(std::get<Qnd>(c.ops[1]).gain == 0.5);
    CHECK(std::get<SqueezeFactor>(c.ops[2]).factor == -1.75);
    CHECK(to_text(c.ops[1]) == "QND c=3 t=4 gain=0.5");
}

TEST_CASE("parser errors name the problem") {
    CHECK_THROWS_AS(parse_circuit("QND c=1 t=2 gain=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nFOO a=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nQND c=1 gain=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nMEAS mode=1 basis=z reg=m\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nQND c=1 t=2 gain=1/0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nQND c=1 t=2 gain=abc\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nMODES 1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nQND c=1 t=2 gain\n"), std::invalid_argument);
}

TEST_CASE("validation catches malformed circuits") {
    Circuit ok = parse_circuit("MODES 1 2\nMEAS mode=1 basis=x reg=m\nFF reg=m target=2 quad=p gain=1\n");
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.registers() == std::vector<std::string>{"m"});
    CHECK(ok.output_wires() == std::vector<int>{2});
    CHECK_FALSE(ok.is_unitary());

    CHECK_THROWS_AS(parse_circuit("MODES 1 1\n").validate(), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nQND c=1 t=3 gain=1\n").validate(), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nQND c=2 t=2 gain=1\n").validate(), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nFF reg=m target=2 quad=p gain=1\n").validate(), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nDISCARD mode=1\nPI mode=1\n").validate(), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("MODES 1 2\nSQZ mode=1 factor=0\n").validate(), std::invalid_argument);
    try {
        parse_circuit("MODES 1 2\nPI mode=1\nQND c=1 t=5 gain=1\n").validate();
        FAIL("expected an exception");
    } catch (const std::invalid_argument &e) {
        CHECK(std::string(e.what()).find("op 2") != std::string::npos);
    }
}

TEST_CASE("composed symplectic map matches gate-by-gate evolution") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        Circuit c = random_unitary_circuit(rng, n, 10);
        SymplecticMap m = symplectic_of(c);
        CHECK(m.is_symplectic(1e-8));
        GaussianState s = oracle::random_state(n, rng);
        GaussianState a = apply(s, m);
        GaussianState b = apply_by_gates(c, s);
        double scale = std::max(1.0, oracle::max_abs(b.cov()));
        CHECK(oracle::max_abs(a.mean() - b.mean()) <= 1e-10 * scale);
        CHECK(oracle::max_abs(a.cov() - b.cov()) <= 1e-10 * scale);
        RunResult r = run(c, s, AverageOutcome{});
        CHECK(oracle::max_abs(r.state.cov() - b.cov()) <= 1e-10 * scale);
        CHECK(r.wires == c.wires);
    }
    CHECK_THROWS_AS(symplectic_of(parse_circuit("MODES 1 2\nMEAS mode=1 basis=x reg=m\n")), std::invalid_argument);
}

TEST_CASE("displacements enter the affine part") {
    Circuit c = parse_circuit("MODES 1 2\nDISP mode=1 re=1 im=0\nQND c=1 t=2 gain=2\n");
    SymplecticMap m = symplectic_of(c);
    CHECK(m.displacement[0] == doctest::Approx(sqrt2));
    CHECK(m.displacement[1] == doctest::Approx(2 * sqrt2));
}

TEST_CASE("ideal decoders realise the transformation matrices") {
    const MatrixXd a2 = a_matrix({1, -1, 1, 0, 1, -2, -1, 1, 0});
    const MatrixXd a3 = a_matrix({1, -1, -1, 0, 1, 2, 1, -2, -2});
    const MatrixXd a4 = a_matrix({-1, 1, 1, 0, 1, -1, -1, 0.5, 0.5});
    CHECK(decoder_matrix(ErasureTag::E2) == a2);
    CHECK(decoder_matrix(ErasureTag::E3) == a3);
    CHECK(decoder_matrix(ErasureTag::E4) == a4);
    for (ErasureTag tag : {ErasureTag::E2, ErasureTag::E3, ErasureTag::E4}) {
        Circuit d = ideal_decoder(tag);
        CHECK(d.wires == surviving_wires(tag));
        CHECK(point_action(d) == decoder_matrix(tag));
        // A point transform lifts to diag(A, A^-T).
        MatrixXd s = symplectic_of(d).matrix;
        MatrixXd a = decoder_matrix(tag);
        CHECK(oracle::max_abs(s.bottomRightCorner(3, 3) - a.inverse().transpose()) <= 1e-12);
        CHECK(oracle::max_abs(s.topRightCorner(3, 3)) == 0);
    }
    CHECK_THROWS_AS(decoder_matrix(ErasureTag::E1), std::invalid_argument);
}

TEST_CASE("decoders act on codeword positions as stated") {
    // |x+y, y-x, y-z, z+y, z> restricted to the survivors, then decoded.
    for (double x : {0.7, -1.2}) {
        for (double y : {0.3, 2.0}) {
            for (double z : {-0.4, 1.1}) {
                double word[] = {x + y, y - x, y - z, z + y, z};
                for (ErasureTag tag : {ErasureTag::E2, ErasureTag::E3, ErasureTag::E4}) {
                    auto wires = surviving_wires(tag);
                    VectorXd in(3);
                    for (int i = 0; i < 3; ++i) {
                        in[i] = word[wires[i] - 1];
                    }
                    VectorXd out = point_action(ideal_decoder(tag)) * in;
                    int pos = static_cast<int>(std::find(wires.begin(), wires.end(), ideal_recovery_wire(tag)) -
                                               wires.begin());
                    CHECK(out[pos] == doctest::Approx(x).epsilon(1e-14));
                }
            }
        }
    }
}

TEST_CASE("ideal encoder prepares the codespace") {
    SymplecticMap m = symplectic_of(ideal_encoder());
    StabilizerCode code = build_five_mode_code();
    // X nullifiers of the output must only involve input x of the ancillas 2..5,
    // which the ideal preparation pins to zero.
    MatrixXd x_out = m.matrix.topRows(5);
    MatrixXd p_out = m.matrix.bottomRows(5);
    MatrixXd nx = code.x_rows * x_out;
    MatrixXd np = code.p_rows * p_out;
    for (MatrixXd *rows : {&nx, &np}) {
        CHECK(oracle::max_abs(rows->col(0)) == 0);
        CHECK(oracle::max_abs(rows->rightCols(5)) == 0);
    }
    // With the ancilla x pinned to zero, y = -p2 and z = -p5 label the codeword.
    for (double x : {0.5, -2.0}) {
        for (double y : {1.0, -0.25}) {
            for (double z : {0.0, 3.0}) {
                VectorXd in = VectorXd::Zero(10);
                in[0] = x;
                in[6] = -y;
                in[9] = -z;
                in[5] = 7;  // p1, p3 and p4 must not matter
                in[7] = -2;
                in[8] = 5;
                VectorXd word(5);
                word << x + y, y - x, y - z, z + y, z;
                CHECK(oracle::max_abs(x_out * in - word) <= 1e-14);
            }
        }
    }
}

TEST_CASE("ideal encoded state concentrates on the codespace") {
    StabilizerCode code = build_five_mode_code();
    for (double r : {1.0, 2.0, 3.0}) {
        GaussianState s = ideal_encoded_state({0.5, -0.25}, r);
        VectorXd v = nullifier_variances(code, s);
        VectorXd v0 = nullifier_variances(code, ideal_encoded_state({0.5, -0.25}, 0));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            CHECK(v[i] == doctest::Approx(v0[i] * std::exp(-2 * r)).epsilon(1e-9));
        }
        VectorXd mean = s.mean();
        CHECK((mean[0] - mean[1]) / 2 == doctest::Approx(0.5 * sqrt2));
    }
}

TEST_CASE("ideal recovery approaches unit fidelity") {
    for (ErasureTag tag : {ErasureTag::E1, ErasureTag::E2, ErasureTag::E3, ErasureTag::E4}) {
        std::complex<double> alpha(0.4, 0.3);
        double previous = 0;
        for (double r : {0.5, 1.0, 2.0, 3.0, 4.0}) {
            GaussianState out = ideal_recovered_state(tag, r, alpha);
            double f = fidelity_with_coherent(out, alpha);
            CHECK(f > previous);
            previous = f;
        }
        CHECK(previous > 0.99);
    }
}

TEST_CASE("optical encoder is passive at zero squeezing apart from the mode 5 squeezer") {
    Circuit enc = optical_encoder(0);
    GaussianState out = run(enc, vacuum(5), AverageOutcome{}).state;
    GaussianState expected = squeeze_by_factor(vacuum(5), 4, 1 / sqrt2);
    CHECK(oracle::max_abs(out.cov() - expected.cov()) <= 1e-14);
    CHECK_THROWS_AS(optical_encoder(-1), std::invalid_argument);
}

TEST_CASE("measurement and feedforward with forced outcomes") {
    Circuit c = parse_circuit("MODES 1 2\nMEAS mode=1 basis=x reg=m\nFF reg=m target=2 quad=p gain=2\n");
    GaussianState s = tensor(coherent(1.0), coherent({0, 1}));
    RunResult r = run(c, s, ForcedOutcome{1.5});
    CHECK(r.wires == std::vector<int>{2});
    REQUIRE(r.registers.count("m") == 1);
    CHECK(r.registers.at("m").outcome == 1.5);
    CHECK(r.state.mean()[1] == doctest::Approx(sqrt2 + 3));
    CHECK(r.position(2) == 0);
    CHECK_THROWS_AS(r.position(1), std::out_of_range);
    CHECK_THROWS_AS(run(c, vacuum(3), MeanOutcome{}), std::invalid_argument);
}
