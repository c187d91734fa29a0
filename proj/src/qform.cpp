#include "gcf/qform.hpp"

#include <algorithm>
#include <utility>

#include "gcf/detail/lll_loop.hpp"
#include "gcf/error.hpp"

namespace gcf {

FormMatrix FormMatrix::from_grid(const std::vector<std::vector<Rational>>& grid) {
  const std::size_t n = grid.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty form matrix");
  std::vector<Rational> q;
  q.reserve(n * n);
  for (const auto& row : grid) {
    if (row.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "form matrix is not square");
    }
    for (const Rational& x : row) q.push_back(canonical(x));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (q[i * n + j] != q[j * n + i]) {
        throw Error(ErrorCode::NotSymmetric,
                    "q(" + std::to_string(i) + "," + std::to_string(j) +
                        ") != q(" + std::to_string(j) + "," +
                        std::to_string(i) + ")");
      }
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Rational> lead(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead[i * k + j] = q[i * n + j];
    if (gcf::determinant(std::move(lead), k) <= 0) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "leading minor " + std::to_string(k) + " is not positive", k);
    }
  }
  return FormMatrix(n, std::move(q));
}

FormMatrix FormMatrix::identity(std::size_t n) {
  std::vector<Rational> q(n * n);
  for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1;
  return FormMatrix(n, std::move(q));
}

std::vector<std::vector<Rational>> FormMatrix::grid() const {
  std::vector<std::vector<Rational>> g(n_, std::vector<Rational>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) g[i][j] = (*this)(i, j);
  return g;
}

Rational FormMatrix::determinant() const {
  return abs(gcf::determinant(q_, n_));
}

FormMatrix form_from_matrix(const std::vector<std::vector<Rational>>& grid) {
  return FormMatrix::from_grid(grid);
}

Rational evaluate(const FormMatrix& q, std::span<const Integer> x) {
  const std::size_t n = q.dim();
  if (x.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector has " + std::to_string(x.size()) + " entries, form has " +
                    std::to_string(n) + " variables");
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (x[j] != 0) row += q(i, j) * x[j];
    sum += row * x[i];
  }
  return sum;
}

FormMatrix congruence(const FormMatrix& q, const IntMatrix& t) {
  const std::size_t n = q.dim();
  if (t.dim() != n) {
    throw Error(ErrorCode::DimensionMismatch, "transform size differs from form");
  }
  std::vector<Rational> qt(n * n);  // Q T
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (q(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (t(k, j) != 0) qt[i * n + j] += q(i, k) * t(k, j);
    }
  std::vector<Rational> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (t(k, i) != 0) s += t(k, i) * qt[k * n + j];
      out[i * n + j] = s;
      out[j * n + i] = s;
    }
  // Unimodular congruence preserves positive definiteness.
  return FormMatrix(n, std::move(out));
}

RecursiveForm recursive_form(const FormMatrix& q) {
  const std::size_t n = q.dim();
  RecursiveForm rf{std::vector<Rational>(n), Triangle<Rational>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    rf.mu(i, i) = 1;
    Rational bi = q(i, i);
    for (std::size_t k = 0; k < i; ++k) bi -= rf.b[k] * rf.mu(k, i) * rf.mu(k, i);
    rf.b[i] = bi;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational s = q(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= rf.b[k] * rf.mu(k, i) * rf.mu(k, j);
      rf.mu(i, j) = s / bi;
    }
  }
  return rf;
}

FormMatrix from_recursive(const RecursiveForm& rf) {
  const std::size_t n = rf.dim();
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k <= i; ++k) {
        const Rational mki = k == i ? Rational(1) : rf.mu(k, i);
        const Rational mkj = k == j ? Rational(1) : rf.mu(k, j);
        s += rf.b[k] * mki * mkj;
      }
      g[i][j] = s;
      g[j][i] = s;
    }
  return FormMatrix::from_grid(g);
}

Minors minors(const FormMatrix& q) {
  const std::size_t n = q.dim();
  Minors m{Triangle<Rational>(n), std::vector<Rational>(n > 0 ? n - 1 : 0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t k = i + 1;
      std::vector<Rational> sub(k * k);
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < i; ++c) sub[r * k + c] = q(r, c);
        sub[r * k + i] = q(r, j);
      }
      m.B(i, j) = determinant(std::move(sub), k);
    }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<std::size_t> idx;
    for (std::size_t r = 0; r < i; ++r) idx.push_back(r);
    idx.push_back(i + 1);
    const std::size_t k = idx.size();
    std::vector<Rational> sub(k * k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) sub[r * k + c] = q(idx[r], idx[c]);
    m.C[i] = determinant(std::move(sub), k);
  }
  return m;
}

namespace {

void check_shift_indices(std::size_t n, std::size_t r, std::size_t s) {
  if (r >= n || s >= n) {
    throw Error(ErrorCode::IndexOutOfRange, "shift index outside 0.." +
                                                std::to_string(n - 1));
  }
  if (r >= s) {
    throw Error(ErrorCode::ShiftDirectionInvalid,
                "shift x_r -> x_r + a x_s needs r < s");
  }
}

void check_swap_index(std::size_t n, std::size_t r) {
  if (r + 1 >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "swap index " + std::to_string(r) + " needs r + 1 < " +
                    std::to_string(n));
  }
}

}  // namespace

FormMatrix apply_shift(const FormMatrix& q, std::size_t r, std::size_t s,
                       const Integer& a) {
  check_shift_indices(q.dim(), r, s);
  IntMatrix t = IntMatrix::identity(q.dim());
  t(r, s) = a;
  return congruence(q, t);
}

FormMatrix apply_swap(const FormMatrix& q, std::size_t r) {
  check_swap_index(q.dim(), r);
  IntMatrix t = IntMatrix::identity(q.dim());
  t.swap_columns(r, r + 1);
  return congruence(q, t);
}

RecursiveForm shift_recursive(const RecursiveForm& rf, std::size_t r,
                              std::size_t s, const Integer& a) {
  check_shift_indices(rf.dim(), r, s);
  RecursiveForm out = rf;
  for (std::size_t i = 0; i < r; ++i) out.mu(i, s) += a * rf.mu(i, r);
  out.mu(r, s) += a;
  return out;
}

RecursiveForm swap_recursive(const RecursiveForm& rf, std::size_t r) {
  const std::size_t n = rf.dim();
  check_swap_index(n, r);
  RecursiveForm out = rf;
  const Rational& m = rf.mu(r, r + 1);
  const Rational& br = rf.b[r];
  const Rational& br1 = rf.b[r + 1];
  const Rational new_br = br1 + m * m * br;
  out.b[r] = new_br;
  out.b[r + 1] = br * br1 / new_br;
  for (std::size_t i = 0; i < r; ++i) {
    out.mu(i, r) = rf.mu(i, r + 1);
    out.mu(i, r + 1) = rf.mu(i, r);
  }
  out.mu(r, r + 1) = br * m / new_br;
  for (std::size_t j = r + 2; j < n; ++j) {
    out.mu(r, j) = (br * m * rf.mu(r, j) + br1 * rf.mu(r + 1, j)) / new_br;
    out.mu(r + 1, j) = rf.mu(r, j) - m * rf.mu(r + 1, j);
  }
  return out;
}

std::strong_ordering operator<=>(const ConditionId& x, const ConditionId& y) {
  auto group = [](ConditionKind k) { return k == ConditionKind::Lovasz ? 1 : 0; };
  if (auto c = group(x.kind) <=> group(y.kind); c != 0) return c;
  if (auto c = x.i <=> y.i; c != 0) return c;
  if (auto c = x.j <=> y.j; c != 0) return c;
  return static_cast<int>(x.kind) <=> static_cast<int>(y.kind);
}

std::string to_string(const ConditionId& id) {
  switch (id.kind) {
    case ConditionKind::SizeUpper:
      return "size+(" + std::to_string(id.i) + "," + std::to_string(id.j) + ")";
    case ConditionKind::SizeLower:
      return "size-(" + std::to_string(id.i) + "," + std::to_string(id.j) + ")";
    case ConditionKind::Lovasz:
      return "lovasz(" + std::to_string(id.i) + ")";
  }
  return "?";
}

void require_omega(const Rational& omega) {
  if (omega < Rational(3, 4) || omega > 1) {
    throw Error(ErrorCode::OmegaOutOfRange,
                "omega must lie in [3/4, 1], got " + to_string(omega));
  }
}

LllCheck is_lll_reduced(const RecursiveForm& rf, const Rational& omega,
                        bool partial) {
  require_omega(omega);
  const std::size_t n = rf.dim();
  const Rational half(1, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (partial && j != i + 1) continue;
      if (rf.mu(i, j) > half) return {false, ConditionId{ConditionKind::SizeUpper, i, j}};
      if (rf.mu(i, j) < -half) return {false, ConditionId{ConditionKind::SizeLower, i, j}};
    }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Rational& m = rf.mu(i, i + 1);
    if (rf.b[i + 1] + m * m * rf.b[i] < omega * rf.b[i]) {
      return {false, ConditionId{ConditionKind::Lovasz, i, i + 1}};
    }
  }
  return {};
}

LllCheck is_lll_reduced(const FormMatrix& q, const Rational& omega, bool partial) {
  return is_lll_reduced(recursive_form(q), omega, partial);
}

namespace {

class RecursiveBackend {
 public:
  RecursiveBackend(RecursiveForm rf, Rational omega)
      : rf_(std::move(rf)), omega_(std::move(omega)),
        t_(IntMatrix::identity(rf_.dim())) {}

  std::size_t dim() const { return rf_.dim(); }

  Integer shift_coefficient(std::size_t r, std::size_t s) const {
    return -round_half_toward_zero(rf_.mu(r, s));
  }

  bool lovasz_violated(std::size_t i) const {
    const Rational& m = rf_.mu(i, i + 1);
    return rf_.b[i + 1] + m * m * rf_.b[i] < omega_ * rf_.b[i];
  }

  void shift(std::size_t r, std::size_t s, const Integer& a) {
    rf_ = shift_recursive(rf_, r, s, a);
    t_.add_column_multiple(r, s, a);
    ops_.push_back(Operation::shift(r, s, a));
    ++shifts_;
  }

  void swap(std::size_t r) {
    rf_ = swap_recursive(rf_, r);
    t_.swap_columns(r, r + 1);
    ops_.push_back(Operation::swap(r));
  }

  const IntMatrix& transform() const { return t_; }
  std::size_t shifts() const { return shifts_; }
  std::vector<Operation>& ops() { return ops_; }

 private:
  RecursiveForm rf_;
  Rational omega_;
  IntMatrix t_;
  std::vector<Operation> ops_;
  std::size_t shifts_ = 0;
};

}  // namespace

ReductionResult lll_reduce(const FormMatrix& q, const LllOptions& options) {
  require_omega(options.omega);
  const std::size_t n = q.dim();
  std::optional<std::size_t> cap = options.iteration_cap;
  if (!cap && options.omega == 1) {
    std::size_t bits = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) bits = std::max(bits, bit_size(q(i, j)));
    cap = 10 * n * n * bits;
  }
  RecursiveBackend be(recursive_form(q), options.omega);
  const std::size_t swaps = detail::run_lll_loop(be, options.partial, cap);
  return ReductionResult{congruence(q, be.transform()), be.transform(), swaps,
                         be.shifts(), std::move(be.ops())};
}

bool minkowski_reduced_small(const FormMatrix& q) {
  const std::size_t n = q.dim();
  if (n == 2) {
    const Rational &a = q(0, 0), &b = q(0, 1), &c = q(1, 1);
    return 2 * abs(b) <= a && a <= c;
  }
  if (n == 3) {
    const Rational &a = q(0, 0), &b = q(0, 1), &c = q(0, 2);
    const Rational &d = q(1, 1), &e = q(1, 2), &f = q(2, 2);
    if (!(a <= d && d <= f)) return false;
    if (2 * abs(b) > a || 2 * abs(c) > a || 2 * abs(e) > d) return false;
    // Q(e3 + s1 e1 + s2 e2) >= Q(e3): the coefficient signs of (b, c, e) are
    // (s1 s2, s1, s2), i.e. zero or two minus signs.
    const int patterns[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    for (const auto& p : patterns) {
      if (a + d + 2 * (p[0] * b + p[1] * c + p[2] * e) < 0) return false;
    }
    return true;
  }
  throw Error(ErrorCode::UnsupportedDimension,
              "Minkowski predicate is implemented for n = 2, 3 only");
}

}  // namespace gcf
