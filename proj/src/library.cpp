#include "cvrep/library.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace cvrep {

namespace {

constexpr double kRoot2 = std::numbers::sqrt2;

}  // namespace

ErasureTag parse_erasure_tag(const std::string &name) {
    if (name.size() == 2 && (name[0] == 'E' || name[0] == 'e') && name[1] >= '1' && name[1] <= '4') {
        return static_cast<ErasureTag>(name[1] - '0');
    }
    throw std::invalid_argument("erasure tag must be E1..E4, got '" + name + "'");
}

std::string tag_name(ErasureTag tag) {
    return "E" + std::to_string(static_cast<int>(tag));
}

ErasurePattern erasure_pattern(ErasureTag tag) {
    return five_mode_erasure(static_cast<int>(tag));
}

std::vector<int> surviving_wires(ErasureTag tag) {
    ErasurePattern pattern = erasure_pattern(tag);
    std::vector<int> out;
    for (int m = 0; m < 5; ++m) {
        if (std::find(pattern.erased.begin(), pattern.erased.end(), m) == pattern.erased.end()) {
            out.push_back(m + 1);
        }
    }
    return out;
}

MatrixXd decoder_matrix(ErasureTag tag) {
    MatrixXd a(3, 3);
    switch (tag) {
        case ErasureTag::E2:
            a << 1, -1, 1,
                0, 1, -2,
                -1, 1, 0;
            return a;
        case ErasureTag::E3:
            a << 1, -1, -1,
                0, 1, 2,
                1, -2, -2;
            return a;
        case ErasureTag::E4:
            a << -1, 1, 1,
                0, 1, -1,
                -1, 0.5, 0.5;
            return a;
        default:
            throw std::invalid_argument("decoder matrices exist for E2..E4");
    }
}

Circuit ideal_encoder() {
    return {{1, 2, 3, 4, 5},
            {Fourier{2}, Fourier{5}, Qnd{5, 4, 1}, Qnd{2, 3, 1}, Qnd{2, 4, 1}, Qnd{1, 2, -1}, Qnd{3, 1, 1},
             Qnd{5, 3, -1}}};
}

Circuit ideal_decoder(ErasureTag tag) {
    switch (tag) {
        case ErasureTag::E1:
            // Mixing alone leaves -sqrt2 x on wire 1; the pi gate and squeezer
            // restore the logical frame.
            return {{1, 2}, {BeamSplitterPM{2, 1}, Pi{1}, SqueezeFactor{1, 1 / kRoot2}}};
        case ErasureTag::E2:
            return {{1, 4, 5}, {Qnd{5, 4, -2}, Qnd{4, 1, -1}, Qnd{5, 1, -1}, Qnd{1, 5, -1}}};
        case ErasureTag::E3:
            return {{1, 3, 5}, {Qnd{5, 3, 2}, Qnd{3, 5, -1}, Qnd{5, 1, 1}, Qnd{1, 5, 1}}};
        case ErasureTag::E4:
            return {{2, 3, 4}, {Qnd{4, 3, -1}, Qnd{2, 4, -1}, Qnd{3, 4, 0.5}, Qnd{4, 2, 2}}};
    }
    throw std::invalid_argument("unknown erasure tag");
}

int ideal_recovery_wire(ErasureTag tag) {
    return tag == ErasureTag::E4 ? 4 : 1;
}

Circuit optical_encoder(double r) {
    if (!(r >= 0)) {
        throw std::invalid_argument("squeezing must be non-negative");
    }
    return {{1, 2, 3, 4, 5},
            {TwoModeSqueeze{2, 4, r}, TwoModeSqueeze{3, 5, r}, Pi{1}, BeamSplitterPM{2, 1}, BeamSplitterPM{4, 3},
             SqueezeFactor{5, 1 / kRoot2}}};
}

// Gains are fixed by the logical frame of optical_encoder; the end-to-end
// fidelity tests pin every sign.
Circuit optical_decoder(ErasureTag tag) {
    switch (tag) {
        case ErasureTag::E1:
            return {{1, 2}, {BeamSplitterPM{2, 1}, Pi{1}}};
        case ErasureTag::E2:
            return {{1, 4, 5},
                    {SqueezeFactor{5, kRoot2}, BeamSplitterPM{4, 1}, Fourier{5}, Measure{1, Quadrature::x, "m1"},
                     Measure{4, Quadrature::p, "m4"}, FeedforwardDisplace{"m4", 5, Quadrature::x, -2},
                     InverseFourier{5}, FeedforwardDisplace{"m1", 5, Quadrature::x, -2}}};
        case ErasureTag::E3:
            return {{1, 3, 5},
                    {Qnd{5, 1, 2}, SqueezeFactor{3, 0.5}, BeamSplitterPM{5, 3}, Pi{3}, SqueezeFactor{1, kRoot2},
                     SqueezeFactor{5, kRoot2}, Measure{1, Quadrature::x, "m1"}, Measure{5, Quadrature::x, "m5"},
                     FeedforwardDisplace{"m1", 3, Quadrature::x, 1},
                     FeedforwardDisplace{"m5", 3, Quadrature::x, -5 * kRoot2 / 2}}};
        case ErasureTag::E4:
            return {{2, 3, 4},
                    {BeamSplitterPM{4, 3}, Discard{3}, SqueezeFactor{4, 1 / kRoot2}, Qnd{4, 2, -2},
                     Measure{2, Quadrature::x, "m2"}, FeedforwardDisplace{"m2", 4, Quadrature::x, 1}, Pi{4},
                     SqueezeFactor{4, kRoot2}}};
    }
    throw std::invalid_argument("unknown erasure tag");
}

int optical_recovery_wire(ErasureTag tag) {
    switch (tag) {
        case ErasureTag::E1:
            return 1;
        case ErasureTag::E2:
            return 5;
        case ErasureTag::E3:
            return 3;
        case ErasureTag::E4:
            return 4;
    }
    throw std::invalid_argument("unknown erasure tag");
}

}  // namespace cvrep
