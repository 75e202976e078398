#include "ssp/lp.hpp"

#include <algorithm>
#include <limits>

#include "ssp/errors.hpp"

namespace ssp::lp {

std::string to_string(Status status) {
  switch (status) {
    case Status::Optimal:
      return "Optimal";
    case Status::Infeasible:
      return "Infeasible";
    case Status::Unbounded:
      return "Unbounded";
  }
  return "?";
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (variable_bounds.size() != n) {
    throw StructuralError("variable_bounds length " + std::to_string(variable_bounds.size()) +
                          " differs from variable count " + std::to_string(n));
  }
  if (relations.size() != constraint_matrix.size() || rhs.size() != constraint_matrix.size()) {
    throw StructuralError("relations/rhs length differs from row count");
  }
  for (std::size_t i = 0; i < constraint_matrix.size(); ++i) {
    if (constraint_matrix[i].size() != n) {
      throw StructuralError("row " + std::to_string(i) + " has length " +
                            std::to_string(constraint_matrix[i].size()) + ", expected " +
                            std::to_string(n));
    }
  }
}

// ---------------------------------------------------------------------------
// Builder

std::size_t Builder::add_variable(Bound bound, Rational cost) {
  bounds_.push_back(bound);
  costs_.push_back(std::move(cost));
  return bounds_.size() - 1;
}

void Builder::set_cost(std::size_t var, Rational cost) {
  if (var >= costs_.size()) throw StructuralError("set_cost on unknown variable");
  costs_[var] = std::move(cost);
}

void Builder::add_row(const std::vector<Term>& terms, Relation relation, Rational rhs) {
  for (const auto& [var, coeff] : terms) {
    if (var >= bounds_.size()) throw StructuralError("row references unknown variable");
  }
  rows_.push_back({terms, relation, std::move(rhs)});
}

void Builder::add_box(std::size_t var, const Rational& lower, const Rational& upper) {
  add_row({{var, Rational(1)}}, Relation::GreaterEqual, lower);
  add_row({{var, Rational(1)}}, Relation::LessEqual, upper);
}

LinearProgram Builder::build() const {
  LinearProgram lp;
  const std::size_t n = bounds_.size();
  lp.objective = costs_;
  lp.variable_bounds = bounds_;
  lp.constraint_matrix.reserve(rows_.size());
  for (const auto& row : rows_) {
    RationalVector dense(n);
    for (const auto& [var, coeff] : row.terms) dense[var] += coeff;
    lp.constraint_matrix.push_back(std::move(dense));
    lp.relations.push_back(row.relation);
    lp.rhs.push_back(row.rhs);
  }
  return lp;
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

enum class ColumnKind { Plus, Minus, Slack, Artificial };

struct Column {
  ColumnKind kind;
  std::size_t origin;  // original variable for Plus/Minus, row for Slack/Artificial
};

class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : lp_(lp) {
    const std::size_t m = lp.row_count();
    const std::size_t n = lp.variable_count();

    for (std::size_t j = 0; j < n; ++j) {
      columns_.push_back({ColumnKind::Plus, j});
      if (lp.variable_bounds[j] == Bound::Free) columns_.push_back({ColumnKind::Minus, j});
    }
    row_sign_.assign(m, 1);
    normalized_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      Relation rel = lp.relations[i];
      // Rows are scaled so that rhs >= 0; ">= 0" rows are flipped too so their
      // slack can start in the basis.
      if (lp.rhs[i] < 0 || (lp.rhs[i] == 0 && rel == Relation::GreaterEqual)) {
        row_sign_[i] = -1;
        if (rel == Relation::LessEqual) {
          rel = Relation::GreaterEqual;
        } else if (rel == Relation::GreaterEqual) {
          rel = Relation::LessEqual;
        }
      }
      normalized_[i] = rel;
    }
    slack_col_.assign(m, kNone);
    for (std::size_t i = 0; i < m; ++i) {
      if (normalized_[i] != Relation::Equal) {
        slack_col_[i] = columns_.size();
        columns_.push_back({ColumnKind::Slack, i});
      }
    }
    initial_col_.assign(m, kNone);
    for (std::size_t i = 0; i < m; ++i) {
      if (normalized_[i] == Relation::LessEqual) {
        initial_col_[i] = slack_col_[i];
      } else {
        initial_col_[i] = columns_.size();
        columns_.push_back({ColumnKind::Artificial, i});
      }
    }

    const std::size_t cols = columns_.size();
    table_.assign(m, RationalVector(cols + 1));
    for (std::size_t i = 0; i < m; ++i) {
      const Rational sign = row_sign_[i];
      auto& row = table_[i];
      for (std::size_t c = 0; c < cols; ++c) {
        const Column& col = columns_[c];
        switch (col.kind) {
          case ColumnKind::Plus:
            row[c] = sign * lp.constraint_matrix[i][col.origin];
            break;
          case ColumnKind::Minus:
            row[c] = -sign * lp.constraint_matrix[i][col.origin];
            break;
          case ColumnKind::Slack:
            if (col.origin == i) row[c] = normalized_[i] == Relation::LessEqual ? 1 : -1;
            break;
          case ColumnKind::Artificial:
            if (col.origin == i) row[c] = 1;
            break;
        }
      }
      row[cols] = sign * lp.rhs[i];
    }
    basis_ = initial_col_;
  }

  LpOutcome run() {
    const std::size_t cols = columns_.size();
    const std::size_t m = table_.size();

    // Phase 1: maximize -sum(artificials).
    RationalVector phase1_cost(cols);
    bool any_artificial = false;
    for (std::size_t c = 0; c < cols; ++c) {
      if (columns_[c].kind == ColumnKind::Artificial) {
        phase1_cost[c] = -1;
        any_artificial = true;
      }
    }
    if (any_artificial) {
      load_objective(phase1_cost);
      iterate(/*allow_artificial=*/true);  // bounded above by 0
      if (objective_row_[cols] < 0) return infeasible();
      evict_artificials();
    }

    // Phase 2.
    RationalVector cost(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      const Column& col = columns_[c];
      if (col.kind == ColumnKind::Plus) cost[c] = lp_.objective[col.origin];
      if (col.kind == ColumnKind::Minus) cost[c] = -lp_.objective[col.origin];
    }
    load_objective(cost);
    std::size_t blocked = iterate(/*allow_artificial=*/false);

    LpOutcome out;
    out.primal_solution = current_primal();
    if (blocked != kNone) {
      out.status = Status::Unbounded;
      RationalVector ray(lp_.variable_count());
      add_column_value(ray, blocked, Rational(1));
      for (std::size_t i = 0; i < m; ++i) {
        if (table_[i][blocked] != 0) add_column_value(ray, basis_[i], -table_[i][blocked]);
      }
      out.certificate = std::move(ray);
      return out;
    }
    out.status = Status::Optimal;
    out.objective_value = objective_row_[cols];
    out.dual_solution = current_dual(cost);
    return out;
  }

 private:
  void add_column_value(RationalVector& x, std::size_t c, const Rational& v) const {
    const Column& col = columns_[c];
    if (col.kind == ColumnKind::Plus) x[col.origin] += v;
    if (col.kind == ColumnKind::Minus) x[col.origin] -= v;
  }

  RationalVector current_primal() const {
    RationalVector x(lp_.variable_count());
    const std::size_t cols = columns_.size();
    for (std::size_t i = 0; i < table_.size(); ++i) add_column_value(x, basis_[i], table_[i][cols]);
    return x;
  }

  // y'_i is the reduced cost of the i-th initial basis column plus its cost.
  RationalVector current_dual(const RationalVector& cost) const {
    RationalVector y(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) {
      const std::size_t c = initial_col_[i];
      y[i] = (objective_row_[c] + cost[c]) * row_sign_[i];
    }
    return y;
  }

  LpOutcome infeasible() const {
    LpOutcome out;
    out.status = Status::Infeasible;
    RationalVector phase1_cost(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (columns_[c].kind == ColumnKind::Artificial) phase1_cost[c] = -1;
    }
    out.certificate = current_dual(phase1_cost);
    return out;
  }

  void load_objective(const RationalVector& cost) {
    const std::size_t cols = columns_.size();
    objective_row_.assign(cols + 1, Rational(0));
    for (std::size_t c = 0; c < cols; ++c) objective_row_[c] = -cost[c];
    for (std::size_t i = 0; i < table_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      const auto& row = table_[i];
      for (std::size_t c = 0; c <= cols; ++c) {
        if (row[c] != 0) objective_row_[c] += cb * row[c];
      }
    }
  }

  // Runs Bland pivots until optimal; returns the entering column that proved
  // unboundedness, or kNone.
  std::size_t iterate(bool allow_artificial) {
    const std::size_t cols = columns_.size();
    for (;;) {
      std::size_t entering = kNone;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!allow_artificial && columns_[c].kind == ColumnKind::Artificial) continue;
        if (objective_row_[c] < 0) {
          entering = c;
          break;
        }
      }
      if (entering == kNone) return kNone;

      std::size_t leaving = kNone;
      Rational best_ratio;
      for (std::size_t i = 0; i < table_.size(); ++i) {
        const Rational& a = table_[i][entering];
        if (a <= 0) continue;
        Rational ratio = table_[i][cols] / a;
        if (leaving == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == kNone) return entering;
      pivot(leaving, entering);
    }
  }

  void evict_artificials() {
    const std::size_t cols = columns_.size();
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (columns_[basis_[i]].kind != ColumnKind::Artificial) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (columns_[c].kind != ColumnKind::Artificial && table_[i][c] != 0) {
          pivot(i, c);
          break;
        }
      }
      // A row with no structural entries is redundant; its artificial stays
      // basic at level zero and never moves.
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    const std::size_t width = columns_.size() + 1;
    auto& prow = table_[r];
    const Rational inv = 1 / prow[e];
    std::vector<std::size_t> nz;
    nz.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (prow[c] != 0) {
        prow[c] *= inv;
        nz.push_back(c);
      }
    }
    Rational factor, product;
    auto eliminate = [&](RationalVector& row) {
      if (row[e] == 0) return;
      factor = row[e];
      for (std::size_t c : nz) {
        boost::multiprecision::multiply(product, factor, prow[c]);
        row[c] -= product;
      }
    };
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (i != r) eliminate(table_[i]);
    }
    eliminate(objective_row_);
    basis_[r] = e;
  }

  const LinearProgram& lp_;
  std::vector<Column> columns_;
  std::vector<int> row_sign_;
  std::vector<Relation> normalized_;
  std::vector<std::size_t> slack_col_;
  std::vector<std::size_t> initial_col_;
  std::vector<RationalVector> table_;
  RationalVector objective_row_;
  std::vector<std::size_t> basis_;
};

Rational row_dot(const RationalVector& row, std::span<const Rational> x) {
  return dot(std::span<const Rational>(row), x);
}

bool satisfies(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::LessEqual:
      return lhs <= rhs;
    case Relation::Equal:
      return lhs == rhs;
    case Relation::GreaterEqual:
      return lhs >= rhs;
  }
  return false;
}

// Sign pattern of the multiplier attached to a row of a maximization:
// y >= 0 on <=, y <= 0 on >=, free on =.
bool multiplier_sign_ok(const Rational& y, Relation rel) {
  if (rel == Relation::LessEqual) return y >= 0;
  if (rel == Relation::GreaterEqual) return y <= 0;
  return true;
}

RationalVector transpose_times(const LinearProgram& lp, const RationalVector& y) {
  RationalVector out(lp.variable_count());
  for (std::size_t i = 0; i < lp.row_count(); ++i) {
    if (y[i] == 0) continue;
    const auto& row = lp.constraint_matrix[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) out[j] += y[i] * row[j];
    }
  }
  return out;
}

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
  lp.validate();
  Tableau tableau(lp);
  return tableau.run();
}

std::optional<RationalVector> strict_interior_point(const LinearProgram& constraints,
                                                    std::span<const std::size_t> strict_vars) {
  constraints.validate();
  const std::size_t n = constraints.variable_count();
  // Substitute x_i = s_i + t with s_i >= 0 for every strict variable, so the
  // program keeps its row count: t's column collects theirs.
  std::vector<bool> strict(n, false);
  for (std::size_t v : strict_vars) {
    if (v >= n) throw StructuralError("strict variable index out of range");
    strict[v] = true;
  }
  LinearProgram aux;
  aux.objective.assign(n + 1, Rational(0));
  aux.objective[n] = 1;
  aux.variable_bounds = constraints.variable_bounds;
  for (std::size_t j = 0; j < n; ++j) {
    if (strict[j]) aux.variable_bounds[j] = Bound::NonNegative;
  }
  aux.variable_bounds.push_back(Bound::NonNegative);
  for (std::size_t i = 0; i < constraints.row_count(); ++i) {
    RationalVector row = constraints.constraint_matrix[i];
    Rational t_coeff = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (strict[j]) t_coeff += row[j];
    }
    row.push_back(std::move(t_coeff));
    aux.constraint_matrix.push_back(std::move(row));
    aux.relations.push_back(constraints.relations[i]);
    aux.rhs.push_back(constraints.rhs[i]);
  }
  RationalVector cap(n + 1);
  cap[n] = 1;
  aux.constraint_matrix.push_back(std::move(cap));
  aux.relations.push_back(Relation::LessEqual);
  aux.rhs.push_back(1);

  LpOutcome out = solve(aux);
  if (out.status != Status::Optimal || *out.objective_value <= 0) return std::nullopt;
  const Rational& t = (*out.primal_solution)[n];
  RationalVector point(out.primal_solution->begin(), out.primal_solution->begin() + n);
  for (std::size_t j = 0; j < n; ++j) {
    if (strict[j]) point[j] += t;
  }
  return point;
}

bool is_feasible(const LinearProgram& lp, std::span<const Rational> x) {
  if (x.size() != lp.variable_count()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (lp.variable_bounds[j] == Bound::NonNegative && x[j] < 0) return false;
  }
  for (std::size_t i = 0; i < lp.row_count(); ++i) {
    if (!satisfies(row_dot(lp.constraint_matrix[i], x), lp.relations[i], lp.rhs[i])) return false;
  }
  return true;
}

Verification verify(const LinearProgram& lp, const LpOutcome& outcome) {
  lp.validate();
  auto fail = [](std::string why) { return Verification{false, std::move(why)}; };
  const std::size_t n = lp.variable_count();
  const std::size_t m = lp.row_count();

  switch (outcome.status) {
    case Status::Optimal: {
      if (!outcome.primal_solution || !outcome.dual_solution || !outcome.objective_value) {
        return fail("optimal outcome without primal, dual or value");
      }
      const auto& x = *outcome.primal_solution;
      const auto& y = *outcome.dual_solution;
      if (!is_feasible(lp, x)) return fail("primal solution infeasible");
      if (y.size() != m) return fail("dual length mismatch");
      for (std::size_t i = 0; i < m; ++i) {
        if (!multiplier_sign_ok(y[i], lp.relations[i])) return fail("dual sign violated on row " + std::to_string(i));
      }
      RationalVector aty = transpose_times(lp, y);
      for (std::size_t j = 0; j < n; ++j) {
        bool ok = lp.variable_bounds[j] == Bound::Free ? aty[j] == lp.objective[j]
                                                       : aty[j] >= lp.objective[j];
        if (!ok) return fail("dual constraint violated on column " + std::to_string(j));
      }
      Rational primal_value = dot(lp.objective, x);
      Rational dual_value = dot(lp.rhs, y);
      if (primal_value != *outcome.objective_value) return fail("reported value differs from c·x");
      if (primal_value != dual_value) return fail("duality gap " + ssp::to_string(Rational(primal_value - dual_value)));
      for (std::size_t i = 0; i < m; ++i) {
        if (y[i] != 0 && row_dot(lp.constraint_matrix[i], x) != lp.rhs[i]) {
          return fail("complementary slackness violated on row " + std::to_string(i));
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (x[j] != 0 && aty[j] != lp.objective[j]) {
          return fail("complementary slackness violated on column " + std::to_string(j));
        }
      }
      return {};
    }
    case Status::Infeasible: {
      if (!outcome.certificate) return fail("infeasible outcome without Farkas certificate");
      const auto& y = *outcome.certificate;
      if (y.size() != m) return fail("certificate length mismatch");
      for (std::size_t i = 0; i < m; ++i) {
        if (!multiplier_sign_ok(y[i], lp.relations[i])) return fail("Farkas sign violated on row " + std::to_string(i));
      }
      RationalVector aty = transpose_times(lp, y);
      for (std::size_t j = 0; j < n; ++j) {
        bool ok = lp.variable_bounds[j] == Bound::Free ? aty[j] == 0 : aty[j] >= 0;
        if (!ok) return fail("Farkas column condition violated on column " + std::to_string(j));
      }
      if (dot(lp.rhs, y) >= 0) return fail("Farkas certificate does not separate: y·b >= 0");
      return {};
    }
    case Status::Unbounded: {
      if (!outcome.certificate) return fail("unbounded outcome without ray");
      const auto& d = *outcome.certificate;
      if (d.size() != n) return fail("ray length mismatch");
      if (outcome.primal_solution && !is_feasible(lp, *outcome.primal_solution)) {
        return fail("reported feasible point infeasible");
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (lp.variable_bounds[j] == Bound::NonNegative && d[j] < 0) return fail("ray leaves bounds");
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (!satisfies(row_dot(lp.constraint_matrix[i], d), lp.relations[i], Rational(0))) {
          return fail("ray violates homogeneous row " + std::to_string(i));
        }
      }
      if (dot(lp.objective, d) <= 0) return fail("ray does not improve the objective");
      return {};
    }
  }
  return fail("unknown status");
}

}  // namespace ssp::lp
