#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ssp/rational.hpp"

/// Exact-rational linear programming: dense two-phase simplex with Bland's rule.
///
/// Every program is a maximization. Results carry certificates that can be
/// checked independently with verify(): dual prices for optimal programs, a
/// Farkas multiplier vector for infeasible ones and a recession ray for
/// unbounded ones.
namespace ssp::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Bound { NonNegative, Free };
enum class Status { Optimal, Infeasible, Unbounded };

std::string to_string(Status status);

struct LinearProgram {
  RationalVector objective;                ///< maximized
  std::vector<RationalVector> constraint_matrix;
  std::vector<Relation> relations;
  RationalVector rhs;
  std::vector<Bound> variable_bounds;

  std::size_t variable_count() const { return objective.size(); }
  std::size_t row_count() const { return constraint_matrix.size(); }

  /// Throws StructuralError on inconsistent dimensions.
  void validate() const;
};

struct LpOutcome {
  Status status = Status::Infeasible;
  std::optional<RationalVector> primal_solution;
  std::optional<RationalVector> dual_solution;
  std::optional<Rational> objective_value;
  /// Farkas multipliers (Infeasible) or primal ray (Unbounded).
  std::optional<RationalVector> certificate;
};

/// Sparse row assembly. Variables are appended on demand and the dense
/// LinearProgram is produced by build().
class Builder {
 public:
  using Term = std::pair<std::size_t, Rational>;

  std::size_t add_variable(Bound bound = Bound::NonNegative, Rational cost = 0);
  void set_cost(std::size_t var, Rational cost);
  void add_row(const std::vector<Term>& terms, Relation relation, Rational rhs);
  /// lower <= x <= upper as two rows.
  void add_box(std::size_t var, const Rational& lower, const Rational& upper);

  std::size_t variable_count() const { return bounds_.size(); }
  LinearProgram build() const;

 private:
  struct SparseRow {
    std::vector<Term> terms;
    Relation relation;
    Rational rhs;
  };
  std::vector<Bound> bounds_;
  RationalVector costs_;
  std::vector<SparseRow> rows_;
};

/// Solves max c·x subject to the rows and variable bounds.
LpOutcome solve(const LinearProgram& lp);

/// A feasible point with every listed variable strictly positive, if one
/// exists. Decided by maximizing t subject to x_i >= t, t <= 1; the objective
/// of `constraints` is ignored.
std::optional<RationalVector> strict_interior_point(const LinearProgram& constraints,
                                                    std::span<const std::size_t> strict_vars);

struct Verification {
  bool ok = true;
  std::string detail;
};

/// Exact, solver-independent check of an outcome against its program.
Verification verify(const LinearProgram& lp, const LpOutcome& outcome);

/// Feasibility of x for the rows and bounds of lp.
bool is_feasible(const LinearProgram& lp, std::span<const Rational> x);

}  // namespace ssp::lp
