#include "gcf/oracle.hpp"

#include <algorithm>
#include <functional>

#include "gcf/error.hpp"

namespace gcf::oracle {

std::vector<BestApproxRecord> best_approximations(const std::vector<Rational>& alpha,
                                                  std::uint64_t q_max) {
  if (q_max < 1) throw Error(ErrorCode::ConfigInvalid, "q_max must be at least 1");
  std::vector<BestApproxRecord> out;
  for (std::uint64_t qi = 1; qi <= q_max; ++qi) {
    const Integer q(static_cast<unsigned long>(qi));
    BestApproxRecord rec{q, {}, 0};
    for (const Rational& a : alpha) {
      const Rational x = q * a;
      Integer p = round_half_toward_zero(x);
      const Rational e = p - x;
      rec.err2 += e * e;
      rec.p.push_back(std::move(p));
    }
    if (out.empty() || rec.err2 < out.back().err2) {
      const bool exact = rec.err2 == 0;
      out.push_back(std::move(rec));
      if (exact) break;
    }
  }
  return out;
}

std::vector<Fraction> classical_cf(const Rational& x) {
  std::vector<Fraction> out;
  Integer p_prev = 1, q_prev = 0, p = 0, q = 1;
  Integer num = x.get_num(), den = x.get_den();
  bool first = true;
  while (den != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer r = num - a * den;
    if (first) {
      p = a;
      q = 1;
      p_prev = 1;
      q_prev = 0;
      first = false;
    } else {
      Integer pn = a * p + p_prev, qn = a * q + q_prev;
      p_prev = p;
      q_prev = q;
      p = pn;
      q = qn;
    }
    out.push_back({p, q});
    num = den;
    den = r;
  }
  return out;
}

namespace {

Rational value_at(const FormMatrix& q, const std::vector<Integer>& x) {
  return evaluate(q, std::span<const Integer>(x));
}

// Last nonzero entry positive.
std::vector<Integer> sign_normalized(std::vector<Integer> x) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] != 0) {
      if (x[i] < 0)
        for (Integer& v : x) v = -v;
      break;
    }
  }
  return x;
}

std::size_t rank_of(const std::vector<std::vector<Integer>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

Integer gcd_tail(const std::vector<Integer>& m, std::size_t from) {
  Integer g = 0;
  for (std::size_t j = from; j < m.size(); ++j) g = gcd(g, m[j]);
  return g;
}

}  // namespace

std::vector<std::vector<Integer>> enumerate_short_vectors(const FormMatrix& q,
                                                          const Rational& bound) {
  const std::size_t n = q.dim();
  const RecursiveForm rf = recursive_form(q);
  std::vector<std::vector<Integer>> out;
  std::vector<Integer> x(n);

  // Level i fixes x_i given x_{i+1..n-1}; `rest` is the budget left.
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i,
                                                              const Rational& rest) {
    Rational c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= rf.mu(i, j) * x[j];
    auto visit = [&](const Integer& xi) {
      const Rational dx = xi - c;
      const Rational used = rf.b[i] * dx * dx;
      if (used > rest) return false;
      x[i] = xi;
      if (i == 0) {
        if (std::any_of(x.begin(), x.end(), [](const Integer& v) { return v != 0; }))
          out.push_back(x);
      } else {
        rec(i - 1, rest - used);
      }
      return true;
    };
    const Integer mid = floor(c);
    for (Integer v = mid; visit(v); --v) {}
    for (Integer v = mid + 1; visit(v); ++v) {}
    x[i] = 0;
  };
  if (n > 0 && bound >= 0) rec(n - 1, bound);
  std::sort(out.begin(), out.end());
  return out;
}

MinimaReport successive_minima(const FormMatrix& q, std::size_t k, const Rational& bound) {
  if (k > q.dim()) throw Error(ErrorCode::DimensionMismatch, "k exceeds the dimension");
  struct Cand {
    Rational v;
    std::vector<Integer> x;
  };
  std::vector<Cand> cands;
  for (auto& x : enumerate_short_vectors(q, bound)) {
    std::vector<Integer> s = sign_normalized(x);
    if (s != x) continue;  // keep one of +-x
    cands.push_back({value_at(q, x), std::move(x)});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.v != b.v) return a.v < b.v;
    return a.x < b.x;
  });
  MinimaReport rep;
  rep.k = k;
  for (const Cand& c : cands) {
    if (rep.witnesses.size() == k) break;
    rep.witnesses.push_back(c.x);
    if (rank_of(rep.witnesses) < rep.witnesses.size()) {
      rep.witnesses.pop_back();
      continue;
    }
    rep.values.push_back(c.v);
  }
  if (rep.witnesses.size() < k) {
    throw Error(ErrorCode::BoundTooSmall,
                "only " + std::to_string(rep.witnesses.size()) +
                    " independent vectors below " + to_string(bound));
  }
  return rep;
}

Relation relation_search(const std::vector<Rational>& alpha, const Integer& height) {
  if (height < 1) throw Error(ErrorCode::ConfigInvalid, "height must be at least 1");
  const std::size_t d = alpha.size();
  if (d == 0) throw Error(ErrorCode::ConfigInvalid, "at least one alpha is required");
  std::optional<Relation> best;
  Integer best_norm;

  auto consider = [&](std::vector<Integer> l) {
    if (std::all_of(l.begin(), l.end(), [](const Integer& v) { return v == 0; })) return;
    l = sign_normalized(std::move(l));
    // Sign normalization may flip the value; recompute.
    Rational v = l[0];
    for (std::size_t i = 0; i < d; ++i) v += l[i + 1] * alpha[i];
    Integer norm = 0;
    for (const Integer& x : l) norm += x * x;
    if (best) {
      const int c = cmp(abs(v), abs(best->value));
      if (c > 0) return;
      if (c == 0) {
        if (norm > best_norm) return;
        if (norm == best_norm && !(l < best->l)) return;
      }
    }
    best = Relation{std::move(l), v};
    best_norm = norm;
  };

  std::vector<Integer> tail(d, -height);
  for (;;) {
    Rational s = 0;
    for (std::size_t i = 0; i < d; ++i) s += tail[i] * alpha[i];
    // l0 nearest to -s within [-height, height].
    for (Integer l0 : {floor(Rational(-s)), ceil(Rational(-s))}) {
      l0 = std::clamp(l0, Integer(-height), height);
      std::vector<Integer> l{l0};
      l.insert(l.end(), tail.begin(), tail.end());
      consider(std::move(l));
    }
    std::size_t i = 0;
    while (i < d && tail[i] == height) tail[i++] = -height;
    if (i == d) break;
    ++tail[i];
  }
  return *best;
}

bool minkowski_by_enumeration(const FormMatrix& q, long box) {
  const std::size_t n = q.dim();
  std::vector<Integer> m(n, -box);
  for (;;) {
    const Rational v = value_at(q, m);
    for (std::size_t i = 0; i < n; ++i) {
      if (gcd_tail(m, i) == 1 && v < q(i, i)) return false;
    }
    std::size_t i = 0;
    while (i < n && m[i] == box) m[i++] = -box;
    if (i == n) break;
    ++m[i];
  }
  return true;
}

}  // namespace gcf::oracle
