#include "aft/exact_lp.hpp"

#include <stdexcept>
#include <vector>

#include "aft/errors.hpp"

namespace aft {

namespace {

// Column j of [A | I] (structural variables first, then slacks).
RationalVector full_column(const RationalMatrix& A, Eigen::Index j) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (j < n) return A.col(j);
  RationalVector e = RationalVector::Zero(m);
  e(j - n) = 1;
  return e;
}

Rational objective_coefficient(const RationalVector& c, Eigen::Index j) {
  return j < c.size() ? c(j) : Rational(0);
}

void self_check(const RationalMatrix& A, const RationalVector& b,
                const RationalVector& c, const PackingLpSolution& sol) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (sol.primal(j) < 0) {
      throw StructuralInconsistencyError("lp self-check: negative primal");
    }
  }
  RationalVector slack = b - A * sol.primal;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (slack(i) < 0) {
      throw StructuralInconsistencyError("lp self-check: primal infeasible");
    }
    if (sol.dual(i) < 0) {
      throw StructuralInconsistencyError("lp self-check: negative dual");
    }
  }
  RationalVector reduced = c - A.transpose() * sol.dual;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (reduced(j) > 0) {
      throw StructuralInconsistencyError("lp self-check: dual infeasible");
    }
  }
  Rational primal_obj = (c.transpose() * sol.primal)(0, 0);
  Rational dual_obj = (b.transpose() * sol.dual)(0, 0);
  if (primal_obj != sol.objective || dual_obj != sol.objective) {
    throw StructuralInconsistencyError("lp self-check: duality gap");
  }
}

}  // namespace

PackingLpSolution solve_packing_lp(const RationalMatrix& A,
                                   const RationalVector& b,
                                   const RationalVector& c) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || c.size() != n) {
    throw std::invalid_argument("lp dimensions disagree");
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b(i) < 0) {
      throw std::invalid_argument("packing lp requires b >= 0");
    }
  }

  // Basis starts as the slack identity; basis_inverse tracks A_B^{-1} and
  // basic_value tracks A_B^{-1} b.
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;
  RationalMatrix basis_inverse = RationalMatrix::Identity(m, m);
  RationalVector basic_value = b;

  while (true) {
    // Dual prices y = c_B' A_B^{-1}.
    RationalVector cb(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      cb(i) = objective_coefficient(c, basis[static_cast<std::size_t>(i)]);
    }
    RationalVector y = basis_inverse.transpose() * cb;

    // Bland: entering variable is the smallest index with positive reduced
    // cost.
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      Rational reduced = objective_coefficient(c, j) -
                         (y.transpose() * full_column(A, j))(0, 0);
      if (reduced > 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) {
      PackingLpSolution sol;
      sol.primal = RationalVector::Zero(n);
      for (Eigen::Index i = 0; i < m; ++i) {
        if (basis[static_cast<std::size_t>(i)] < n) {
          sol.primal(basis[static_cast<std::size_t>(i)]) = basic_value(i);
        }
      }
      sol.dual = y;
      sol.objective = (c.transpose() * sol.primal)(0, 0);
      self_check(A, b, c, sol);
      return sol;
    }

    // Ratio test; Bland tie-break on the smallest basic variable index.
    RationalVector direction = basis_inverse * full_column(A, entering);
    Eigen::Index leaving_row = -1;
    Rational best_ratio = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (direction(i) <= 0) continue;
      Rational ratio = basic_value(i) / direction(i);
      if (leaving_row < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[static_cast<std::size_t>(i)] <
                                      basis[static_cast<std::size_t>(
                                          leaving_row)])) {
        leaving_row = i;
        best_ratio = ratio;
      }
    }
    if (leaving_row < 0) {
      throw std::invalid_argument("lp is unbounded");
    }

    // Pivot: replace the leaving row's basic variable and update the inverse
    // by the corresponding elementary row operations.
    const Rational pivot = direction(leaving_row);
    basis_inverse.row(leaving_row) /= pivot;
    basic_value(leaving_row) /= pivot;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == leaving_row || direction(i) == 0) continue;
      basic_value(i) -= direction(i) * basic_value(leaving_row);
      basis_inverse.row(i) -= direction(i) * basis_inverse.row(leaving_row);
    }
    basis[static_cast<std::size_t>(leaving_row)] = entering;
  }
}

}  // namespace aft
