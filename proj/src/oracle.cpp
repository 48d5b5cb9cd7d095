#include "severi/oracle.hpp"

#include <functional>
#include <mutex>
#include <tuple>

#include "severi/errors.hpp"

namespace severi::oracle {

namespace {

int pair_weight(const LabelSet& labels, Label a, Label b) {
  if (labels.single_label()) return 1;
  return labels.pairing(a, b);
}

}  // namespace

std::map<BasisState, Rational> normal_order_raw(const FreeWord& word, const LabelSet& labels) {
  for (const Ladder& l : word) {
    if (l.mode == 0) throw DomainError("zero mode in free word");
    if (labels.single_label() && l.label != Label::unit) throw DomainError("point label in the single-label space");
  }
  std::map<BasisState, Rational> out;
  std::vector<std::pair<FreeWord, Rational>> work{{word, Rational(1)}};
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    // Rightmost annihilator; everything to its right is a creator.
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)].mode < 0) --i;
    if (i < 0) {
      std::vector<int> unit, point;
      for (const Ladder& l : w) (l.label == Label::unit ? unit : point).push_back(-l.mode);
      out[BasisState{Partition(unit), Partition(point)}] += c;
      continue;
    }
    const std::size_t k = static_cast<std::size_t>(i);
    if (k + 1 == w.size()) continue;  // annihilator against the vacuum
    const Ladder a = w[k], b = w[k + 1];
    // a b = b a + [a, b]
    if (a.mode == -b.mode) {
      const int g = pair_weight(labels, a.label, b.label);
      if (g != 0) {
        FreeWord contracted;
        contracted.reserve(w.size() - 2);
        contracted.insert(contracted.end(), w.begin(), w.begin() + i);
        contracted.insert(contracted.end(), w.begin() + i + 2, w.end());
        work.emplace_back(std::move(contracted), c * a.mode * g);
      }
    }
    std::swap(w[k], w[k + 1]);
    work.emplace_back(std::move(w), std::move(c));
  }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

FockVector normal_order(const FreeWord& word, const LabelSet& labels) {
  FockVector out;
  for (const auto& [raw, c] : normal_order_raw(word, labels)) {
    // raw(A, B) = z(A) z(B) |A, B>
    out.add(raw, MultiSeries::constant(out.window(), c * z_factor(raw.mu) * z_factor(raw.nu)));
  }
  return out;
}

namespace {

struct WordTerm {
  FreeWord word;
  int u_power;
  int q2_power;
  Rational coefficient;
};

FreeWord letters(const Partition& mu, int sign, Label a) {
  FreeWord w;
  for (int p : mu.parts()) w.push_back({sign * p, a});
  return w;
}

FreeWord cat(std::initializer_list<FreeWord> parts) {
  FreeWord out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<Partition> partitions_up_to(int n) {
  std::vector<Partition> out;
  for (int m = 0; m <= n; ++m) {
    for (auto& p : enumerate_partitions(m)) out.push_back(std::move(p));
  }
  return out;
}

// Every term of the operator that can act nontrivially at energy <= s.
std::vector<WordTerm> operator_terms(OperatorKind kind, int s) {
  const Label one = Label::unit, pt = Label::point;
  std::vector<WordTerm> terms;
  const auto all = partitions_up_to(s);
  auto aut = [](const Partition& p) { return aut_count(p); };

  if (kind == OperatorKind::mh) {
    for (int k = 1; k <= s; ++k) {
      for (int l = 1; k + l <= s; ++l) {
        terms.push_back({{{k + l, one}, {-k, one}, {-l, one}}, 1, 0, Rational(1, 2)});
        terms.push_back({{{-k - l, one}, {k, one}, {l, one}}, 0, 0, Rational(1, 2)});
      }
    }
    return terms;
  }

  if (kind == OperatorKind::ms || kind == OperatorKind::ns) {
    const bool literal = kind == OperatorKind::ns;
    for (int k = 1; k <= s; ++k) {
      terms.push_back({literal ? FreeWord{{k, pt}, {-k, pt}} : FreeWord{{-k, pt}, {k, pt}}, 0, 0, 1});
    }
    for (const Partition& mu : all) {
      for (const Partition& nu : all) {
        if (mu.size() != nu.size() || mu.empty()) continue;
        const FreeWord w = literal ? cat({letters(nu, 1, one), letters(mu, -1, one)})
                                   : cat({letters(mu, -1, one), letters(nu, 1, one)});
        terms.push_back({w, mu.length() - 1, 1, 1 / (aut(mu) * aut(nu))});
      }
    }
    if (literal) terms.push_back({{}, -1, 1, 1});
    return terms;
  }

  // M_F
  for (const Partition& mu : all) {
    if (mu.length() != 2) continue;
    const int k = mu.size();
    terms.push_back({cat({{{-k, pt}}, letters(mu, 1, pt)}), 0, 0, 1 / aut(mu)});
    terms.push_back({cat({letters(mu, -1, pt), {{k, pt}}}), 1, 0, 1 / aut(mu)});
  }
  for (int k = 1; k <= s; ++k) {
    for (const Partition& nu : all) {
      for (const Partition& mu : all) {
        if (mu.size() != nu.size() + k || mu.length() + nu.length() < 2) continue;
        terms.push_back({cat({letters(mu, -1, one), letters(nu, 1, one), {{k, pt}}}), mu.length() - 1, 1,
                         1 / (aut(mu) * aut(nu))});
      }
    }
  }
  for (const Partition& nu : all) {
    for (const Partition& mu : all) {
      const int k = nu.size() - mu.size();
      if (k <= 0 || mu.length() + nu.length() < 2) continue;
      terms.push_back({cat({letters(mu, -1, one), {{-k, pt}}, letters(nu, 1, one)}), mu.length(), 1,
                       1 / (aut(mu) * aut(nu))});
    }
  }
  const int sign = kind == OperatorKind::mf ? -1 : 1;
  for (int k = 2; k <= s; ++k) terms.push_back({{{-k, pt}, {k, pt}}, 1, 0, frac(sign * (k * k - 1), 12)});
  return terms;
}

}  // namespace

SquareMatrix block_from_words(OperatorKind kind, int s) {
  const LabelSet labels = kind == OperatorKind::mh ? LabelSet::hurwitz() : LabelSet::severi();
  const auto basis = energy_basis(labels, s);
  std::map<BasisState, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  const auto terms = operator_terms(kind, s);

  SquareMatrix m(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const BasisState& b = basis[j];
    FreeWord state_word = cat({letters(b.mu, -1, Label::unit), letters(b.nu, -1, Label::point)});
    const Rational inv_norm = 1 / (z_factor(b.mu) * z_factor(b.nu));
    for (const WordTerm& term : terms) {
      const FockVector image = normal_order(cat({term.word, state_word}), labels);
      for (const auto& [target, c] : image.components()) {
        auto it = index.find(target);
        if (it == index.end()) throw IntegrityError("word image left the energy block");
        m(it->second, j).add_scaled(c, exponents({{Var::u, term.u_power}, {Var::q2, term.q2_power}}),
                                    term.coefficient * inv_norm);
      }
    }
  }
  return m;
}

namespace {

int contact_sum(const Profile& p) {  // I(p) = sum k p_k
  int s = 0;
  for (std::size_t k = 0; k < p.size(); ++k) s += static_cast<int>(k + 1) * p[k];
  return s;
}

int count(const Profile& p) {  // |p| = sum p_k
  int s = 0;
  for (int x : p) s += x;
  return s;
}

Profile trimmed(Profile p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

// All profiles q with q <= bound componentwise.
void sub_profiles(const Profile& bound, std::size_t i, Profile& current, const std::function<void(const Profile&)>& fn) {
  if (i == bound.size()) {
    fn(current);
    return;
  }
  for (int x = 0; x <= bound[i]; ++x) {
    current[i] = x;
    sub_profiles(bound, i + 1, current, fn);
  }
  current[i] = 0;
}

// All profiles q with I(q) = total exactly, q_k arbitrary.
void profiles_of_weight(int total, int k, Profile& current, const std::function<void(const Profile&)>& fn) {
  if (total == 0) {
    fn(current);
    return;
  }
  if (k > total) return;
  for (int x = 0; x * k <= total; ++x) {
    current[static_cast<std::size_t>(k - 1)] = x;
    profiles_of_weight(total - x * k, k + 1, current, fn);
  }
  current[static_cast<std::size_t>(k - 1)] = 0;
}

Integer binom(int n, int k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer profile_binom(const Profile& top, const Profile& bottom) {
  Integer out = 1;
  for (std::size_t k = 0; k < top.size(); ++k) out *= binom(top[k], k < bottom.size() ? bottom[k] : 0);
  return out;
}

Integer profile_power(const Profile& p) {  // I^p = prod k^{p_k}
  Integer out = 1;
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (int i = 0; i < p[k]; ++i) out *= static_cast<long>(k + 1);
  }
  return out;
}

using Key = std::tuple<int, int, Profile, Profile>;

struct Memo {
  std::mutex mutex;
  std::map<Key, Integer> values;
};

Memo& memo() {
  static Memo m;
  return m;
}

Integer recurse(int d, int delta, Profile alpha, Profile beta) {
  alpha = trimmed(std::move(alpha));
  beta = trimmed(std::move(beta));
  if (delta < 0 || d < 0) return 0;
  if (contact_sum(alpha) + contact_sum(beta) != d) return 0;
  if (d == 0) return delta == 0 ? 1 : 0;
  const int genus = (d - 1) * (d - 2) / 2 - delta;
  if (2 * d + genus - 1 + count(beta) < 0) return 0;

  const Key key{d, delta, alpha, beta};
  {
    std::lock_guard lock(memo().mutex);
    auto it = memo().values.find(key);
    if (it != memo().values.end()) return it->second;
  }

  Integer total = 0;
  const std::size_t width = static_cast<std::size_t>(d);
  Profile a = alpha, b = beta;
  a.resize(width, 0);
  b.resize(width, 0);

  // A point specializes to the line: an unfixed contact of order k becomes fixed.
  for (std::size_t k = 0; k < width; ++k) {
    if (b[k] == 0) continue;
    Profile a2 = a, b2 = b;
    ++a2[k];
    --b2[k];
    total += static_cast<long>(k + 1) * recurse(d, delta, a2, b2);
  }

  // The curve breaks off the line: residual curve of degree d-1.
  Profile a_sub(width, 0), beta_prime(width, 0);
  sub_profiles(a, 0, a_sub, [&](const Profile& a_prime) {
    const int rest = d - 1 - contact_sum(a_prime);
    if (rest < 0) return;
    profiles_of_weight(rest, 1, beta_prime, [&](const Profile& bp) {
      Profile diff(width, 0);
      for (std::size_t k = 0; k < width; ++k) {
        if (bp[k] < b[k]) return;
        diff[k] = bp[k] - b[k];
      }
      const int delta_prime = delta - (d - 1) + count(diff);
      if (delta_prime < 0) return;
      const Integer inner = recurse(d - 1, delta_prime, a_prime, bp);
      if (inner == 0) return;
      total += profile_power(diff) * profile_binom(a, a_prime) * profile_binom(bp, b) * inner;
    });
  });

  std::lock_guard lock(memo().mutex);
  memo().values.emplace(key, total);
  return total;
}

}  // namespace

Integer severi_degree(int d, int delta, const Profile& alpha, const Profile& beta) {
  for (int x : alpha) {
    if (x < 0) throw DomainError("negative tangency multiplicity");
  }
  for (int x : beta) {
    if (x < 0) throw DomainError("negative tangency multiplicity");
  }
  if (contact_sum(alpha) + contact_sum(beta) != d) throw DomainError("tangency profile does not sum to the degree");
  return recurse(d, delta, alpha, beta);
}

Integer disconnected_p2(int g, int d) {
  if (d < 1) throw DomainError("degree must be positive");
  const int delta = (d - 1) * (d - 2) / 2 - g;
  if (delta < 0) return 0;
  return severi_degree(d, delta, {}, {d});
}

std::map<std::pair<int, int>, Rational> connected_p2(int d_max) {
  // Z = 1 + sum u^{g-1} N^._{g,d} t^n / n! Q^d with n = 3d + g - 1; Q sits in the Q1 slot.
  int g_max = 0;
  for (int d = 1; d <= d_max; ++d) g_max = std::max(g_max, (d - 1) * (d - 2) / 2);
  const int t_max = 3 * d_max + g_max - 1;
  Window w;
  // Every term has u = t - 3 Q, so this u range never truncates.
  w.set(Var::t, 0, t_max).set(Var::q1, 0, d_max).set(Var::u, -3 * d_max, t_max);
  MultiSeries z = MultiSeries::constant(w, 1);
  for (int d = 1; d <= d_max; ++d) {
    for (int g = 1 - d; g <= (d - 1) * (d - 2) / 2; ++g) {
      const int n = 3 * d + g - 1;
      if (n < 0) continue;
      const Integer value = disconnected_p2(g, d);
      if (value == 0) continue;
      z.add_term(exponents({{Var::t, n}, {Var::q1, d}, {Var::u, g - 1}}), Rational(value) / Rational(factorial(n)));
    }
  }
  const MultiSeries y = series_log(z);
  std::map<std::pair<int, int>, Rational> out;
  for (const auto& [e, c] : y.terms()) {
    const int d = at(e, Var::q1), n = at(e, Var::t), g = at(e, Var::u) + 1;
    if (n != 3 * d + g - 1) throw IntegrityError("impure term in the connected oracle series");
    out[{g, d}] = c * Rational(factorial(n));
  }
  return out;
}

}  // namespace severi::oracle
