#ifndef CVREP_REWRITE_HPP
#define CVREP_REWRITE_HPP

#include <string>

#include "cvrep/circuit.hpp"

namespace cvrep {

/// Local identities, stated over wires W0, W1, W2 bound from the matched ops.
///  1: QND(W0->W1,a) QND(W1->W0,b)  =>  S(W0,1+ab) QND(W1->W0,b) QND(W0->W1,a) S(W1,1/(1+ab))
///  2: S(W0,a) QND(W0->W1,b)        =>  QND(W0->W1,ab) S(W0,a)
///  3: S(W0,a) QND(W1->W0,b)        =>  QND(W1->W0,b/a) S(W0,a)
///  4: QND(W1->W2,a) QND(W2->W0,b)  =>  QND(W2->W0,b) QND(W1->W0,ab) QND(W1->W2,a)
///  5: QND(W0->W1,a) QND(W2->W0,b)  =>  QND(W2->W0,b) QND(W0->W1,a) QND(W2->W1,-ab)
///  6: QND(W0->W1,a)                =>  FT(W0) FT(W1) QND(W1->W0,-a) IFT(W0) IFT(W1)
///  7: BS(W0,W1,pi/4)               =>  QND(W1->W0,-1) QND(W0->W1,1/2) S(W1,sqrt2) S(W0,1/sqrt2)
///  8: QND(W1->W0,1) QND(W0->W1,-1) =>  BS(W0,W1,-pi/4) S(W0,sqrt2) S(W1,sqrt2) QND(W0->W1,-1) S(W1,1/2)
/// S is SqueezeFactor and BS the rotation-angle splitter.
enum class RewriteRule { r1 = 1, r2, r3, r4, r5, r6, r7, r8, measure_control };

/// Length of the matched window for a rule.
int rule_window(RewriteRule rule);
RewriteRule parse_rule(const std::string &name);

/// Rewrites the window starting at `position` (0-based op index).
/// measure-control: QND(c->t,a) then MEAS x on c becomes MEAS x on c and
/// FF(t, x, a); QND(c->t,a) then MEAS p on t becomes MEAS p on t and FF(c, p, -a).
/// Throws std::invalid_argument if the pattern does not match or 1+ab = 0.
Circuit rewrite(const Circuit &circuit, RewriteRule rule, std::size_t position);

}  // namespace cvrep

#endif
