#pragma once

#include <Eigen/Dense>

#include "aft/rational.hpp"

namespace aft {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

struct PackingLpSolution {
  Rational objective;
  RationalVector primal;  // optimal x
  RationalVector dual;    // optimal y for the row constraints
};

// Solves max c'x subject to Ax <= b, x >= 0 exactly, requiring b >= 0 (so the
// slack basis is feasible and no first phase is needed).  Revised simplex with
// Bland's rule; termination is guaranteed.  The returned primal/dual pair is
// verified internally (feasibility both sides plus equal objectives); a
// failure of that self-check throws StructuralInconsistencyError.  An
// unbounded problem throws std::invalid_argument.
PackingLpSolution solve_packing_lp(const RationalMatrix& A,
                                   const RationalVector& b,
                                   const RationalVector& c);

}  // namespace aft
