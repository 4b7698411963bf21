#ifndef CVREP_LIBRARY_HPP
#define CVREP_LIBRARY_HPP

#include <string>

#include "cvrep/circuit.hpp"
#include "cvrep/codes.hpp"

namespace cvrep {

/// Erasure patterns of the five-mode code, named by their recovery vertex.
enum class ErasureTag { E1 = 1, E2, E3, E4 };

ErasureTag parse_erasure_tag(const std::string &name);
std::string tag_name(ErasureTag tag);
ErasurePattern erasure_pattern(ErasureTag tag);
/// Wire labels left after the erasure, ascending.
std::vector<int> surviving_wires(ErasureTag tag);

/// Point transform of the ideal decoder over the surviving wires (E2..E4).
MatrixXd decoder_matrix(ErasureTag tag);

/// Two Fourier gates and six QND gates taking |x,0,0,0,0> to
/// the codespace basis |x+y, y-x, y-z, z+y, z>, integrated over y and z.
Circuit ideal_encoder();
Circuit ideal_decoder(ErasureTag tag);
int ideal_recovery_wire(ErasureTag tag);

/// Input on wire 1, vacuum on wires 2..5. Two two-mode squeezers, a pi gate,
/// two balanced splitters and a 1/sqrt2 squeezer on wire 5.
Circuit optical_encoder(double r);
/// Homodyne and feedforward decoders for the optical encoding.
Circuit optical_decoder(ErasureTag tag);
int optical_recovery_wire(ErasureTag tag);

}  // namespace cvrep

#endif
