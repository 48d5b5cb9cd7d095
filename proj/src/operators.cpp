#include "severi/operators.hpp"

#include <set>

#include "severi/errors.hpp"

namespace severi {

namespace {

// Collects raw-word images of one normalized basis state.
class ImageBuilder {
 public:
  ImageBuilder(const BasisState& source, const LabelSet& labels)
      : source_(source), labels_(labels), norm_(normalization(source)) {}

  void add_word(const LadderWord& word, int u_power, int q2_power, const Rational& c) {
    auto raw = apply_word_raw(word, source_, labels_);
    if (!raw) return;
    Rational coefficient = c * raw->factor * normalization(raw->state) / norm_;
    add(raw->state, exponents({{Var::u, u_power}, {Var::q2, q2_power}}), coefficient);
  }

  void add(const BasisState& s, const Exponents& shift, const Rational& c) {
    auto [it, inserted] = terms_.try_emplace({s, shift}, c);
    if (!inserted) it->second += c;
  }

  Image finish() {
    Image out;
    for (auto& [key, c] : terms_) {
      if (sgn(c) != 0) out.push_back({key.first, key.second, std::move(c)});
    }
    return out;
  }

 private:
  BasisState source_;
  LabelSet labels_;
  Rational norm_;
  std::map<std::pair<BasisState, Exponents>, Rational> terms_;
};

LadderWord creators(const Partition& mu, Label a) {
  LadderWord w;
  for (int p : mu.parts()) w.push_back({-p, a});
  return w;
}

LadderWord annihilators(const Partition& mu, Label a) {
  LadderWord w;
  for (int p : mu.parts()) w.push_back({p, a});
  return w;
}

LadderWord join(std::initializer_list<LadderWord> words) {
  LadderWord out;
  for (const auto& w : words) out.insert(out.end(), w.begin(), w.end());
  return out;
}

std::set<int> distinct_parts(const Partition& mu) { return {mu.parts().begin(), mu.parts().end()}; }

void require_single_label(const BasisState& s) {
  if (!s.nu.empty()) throw DomainError("M_H acts on the single-label space");
}

// alpha_{-k}[p] alpha_k[p] and the Q2 sum of M_S; the literal flag applies the
// words in the order written for N_S (annihilators first), which agrees since
// same-label modes commute.
void ms_sums(ImageBuilder& b, const BasisState& s, bool literal) {
  for (int k : distinct_parts(s.mu)) {
    const LadderWord move = literal ? LadderWord{{k, Label::point}, {-k, Label::point}}
                                    : LadderWord{{-k, Label::point}, {k, Label::point}};
    b.add_word(move, 0, 0, 1);
  }
  for (const Partition& nu : sub_multisets(s.nu)) {
    if (nu.empty()) continue;
    const Rational aut_nu = aut_count(nu);
    for (const Partition& mu : enumerate_partitions(nu.size())) {
      const LadderWord word = literal ? join({annihilators(nu, Label::unit), creators(mu, Label::unit)})
                                      : join({creators(mu, Label::unit), annihilators(nu, Label::unit)});
      b.add_word(word, mu.length() - 1, 1, 1 / (aut_count(mu) * aut_nu));
    }
  }
}

Image ms_action(const BasisState& s) {
  ImageBuilder b(s, LabelSet::severi());
  ms_sums(b, s, false);
  return b.finish();
}

Image ns_action(const BasisState& s) {
  ImageBuilder b(s, LabelSet::severi());
  ms_sums(b, s, true);
  b.add(s, exponents({{Var::u, -1}, {Var::q2, 1}}), 1);
  return b.finish();
}

// 1/2 sum over ordered pairs (k, l), exactly as written.
Image mh_action(const BasisState& s) {
  require_single_label(s);
  ImageBuilder b(s, LabelSet::hurwitz());
  const Rational half(1, 2);
  for (int p : distinct_parts(s.mu)) {
    for (int k = 1; k < p; ++k) {
      const int l = p - k;
      b.add_word({{k + l, Label::unit}, {-k, Label::unit}, {-l, Label::unit}}, 1, 0, half);
    }
  }
  const auto parts = distinct_parts(s.mu);
  for (int k : parts) {
    for (int l : parts) b.add_word({{-k - l, Label::unit}, {k, Label::unit}, {l, Label::unit}}, 0, 0, half);
  }
  return b.finish();
}

Image mf_action(const BasisState& s, const std::function<Rational(int)>& fourth) {
  ImageBuilder b(s, LabelSet::severi());
  // alpha_{-k}[p] alpha_mu[p] + u alpha_{-mu}[p] alpha_k[p], l(mu) = 2
  for (const Partition& mu : sub_multisets(s.mu)) {
    if (mu.length() != 2) continue;
    b.add_word(join({{{-mu.size(), Label::point}}, annihilators(mu, Label::point)}), 0, 0, 1 / aut_count(mu));
  }
  for (int k : distinct_parts(s.mu)) {
    for (const Partition& mu : enumerate_partitions(k)) {
      if (mu.length() != 2) continue;
      b.add_word(join({creators(mu, Label::point), {{k, Label::point}}}), 1, 0, 1 / aut_count(mu));
    }
  }
  // Q u^{l(mu)-1} alpha_{-mu}[1] alpha_nu[1] alpha_k[p], |mu| = |nu| + k, nu may be empty
  const auto nus = sub_multisets(s.nu);
  for (int k : distinct_parts(s.mu)) {
    for (const Partition& nu : nus) {
      for (const Partition& mu : enumerate_partitions(nu.size() + k)) {
        if (mu.length() + nu.length() < 2) continue;
        b.add_word(join({creators(mu, Label::unit), annihilators(nu, Label::unit), {{k, Label::point}}}),
                   mu.length() - 1, 1, 1 / (aut_count(mu) * aut_count(nu)));
      }
    }
  }
  // Q u^{l(mu)} alpha_{-mu}[1] alpha_{-k}[p] alpha_nu[1], |mu| + k = |nu|, mu may be empty
  for (const Partition& nu : nus) {
    if (nu.empty()) continue;
    for (int k = 1; k <= nu.size(); ++k) {
      for (const Partition& mu : enumerate_partitions(nu.size() - k)) {
        if (mu.length() + nu.length() < 2) continue;
        b.add_word(join({creators(mu, Label::unit), {{-k, Label::point}}, annihilators(nu, Label::unit)}),
                   mu.length(), 1, 1 / (aut_count(mu) * aut_count(nu)));
      }
    }
  }
  // c_k u alpha_{-k}[p] alpha_k[p], k > 1
  for (int k : distinct_parts(s.mu)) {
    if (k < 2) continue;
    const Rational c = fourth(k);
    if (sgn(c) != 0) b.add_word({{-k, Label::point}, {k, Label::point}}, 1, 0, c);
  }
  return b.finish();
}

struct BlockCache {
  std::mutex mutex;
  std::map<std::string, std::unique_ptr<EnergyBlockMatrix>> blocks;
};

BlockCache& block_cache() {
  static BlockCache cache;
  return cache;
}

}  // namespace

GradedOperator::GradedOperator(std::string name, LabelSet labels, Action action)
    : name_(std::move(name)), labels_(labels), action_(std::move(action)), memo_(std::make_shared<Memo>()) {}

const Image& GradedOperator::image(const BasisState& s) const {
  {
    std::lock_guard lock(memo_->mutex);
    auto it = memo_->images.find(s);
    if (it != memo_->images.end()) return it->second;
  }
  Image computed = action_(s);
  for (const ImageTerm& term : computed) {
    if (term.state.energy() != s.energy()) {
      throw IntegrityError(name_ + " does not preserve energy on " + s.to_string());
    }
  }
  std::lock_guard lock(memo_->mutex);
  // Map nodes are stable, so references handed out earlier stay valid.
  return memo_->images.try_emplace(s, std::move(computed)).first->second;
}

FockVector GradedOperator::apply(const BasisState& s, const Window& w) const {
  return apply(FockVector::basis(w, s), {}, 1);
}

FockVector GradedOperator::apply(const FockVector& v, const Exponents& shift, const Rational& scale) const {
  FockVector out(v.window());
  Rational c;
  for (const auto& [s, series] : v.components()) {
    for (const ImageTerm& term : image(s)) {
      c = term.coefficient * scale;
      out.add_scaled(term.state, series, term.shift + shift, c);
    }
  }
  return out;
}

const GradedOperator& ms_operator() {
  static const GradedOperator op("M_S", LabelSet::severi(), ms_action);
  return op;
}

const GradedOperator& ns_operator() {
  static const GradedOperator op("N_S", LabelSet::severi(), ns_action);
  return op;
}

const GradedOperator& mh_operator() {
  static const GradedOperator op("M_H", LabelSet::hurwitz(), mh_action);
  return op;
}

const GradedOperator& mf_operator(FourthSumSign sign) {
  static const GradedOperator commuting =
      mf_with_fourth_sum([](int k) { return frac(-(k * k - 1), 12); }, "M_F");
  static const GradedOperator printed =
      mf_with_fourth_sum([](int k) { return frac(k * k - 1, 12); }, "M_F[printed]");
  return sign == FourthSumSign::commuting ? commuting : printed;
}

GradedOperator mf_with_fourth_sum(const std::function<Rational(int)>& coefficient, const std::string& name) {
  return GradedOperator(name, LabelSet::severi(), [coefficient](const BasisState& s) { return mf_action(s, coefficient); });
}

GradedOperator energy_operator(const LabelSet& labels, Var q) {
  return GradedOperator(std::string("Q^|.|[") + var_name(q) + "]", labels, [q](const BasisState& s) {
    return Image{{s, exponents({{q, s.energy()}}), Rational(1)}};
  });
}

FockVector apply_ms(const BasisState& s, const Window& w) { return ms_operator().apply(s, w); }
FockVector apply_mh(const BasisState& s, const Window& w) { return mh_operator().apply(s, w); }
FockVector apply_ns(const BasisState& s, const Window& w) { return ns_operator().apply(s, w); }
FockVector apply_mf(const BasisState& s, const Window& w) { return mf_operator().apply(s, w); }

std::vector<BasisState> energy_basis(const LabelSet& labels, int s) {
  std::vector<BasisState> out;
  if (labels.single_label()) {
    for (auto& mu : enumerate_partitions(s)) out.push_back({std::move(mu), Partition()});
  } else {
    for (auto& [mu, nu] : enumerate_pairs(s)) out.push_back({std::move(mu), std::move(nu)});
  }
  return out;
}

const EnergyBlockMatrix& block_matrix(const GradedOperator& op, int s, int cutoff) {
  if (s < 0 || s > cutoff) {
    throw ConfigurationError("energy " + std::to_string(s) + " outside the configured cutoff " + std::to_string(cutoff));
  }
  const std::string key = op.name() + "|" + std::to_string(s) + "|v" + std::to_string(kOperatorConventionVersion);
  BlockCache& cache = block_cache();
  {
    std::lock_guard lock(cache.mutex);
    auto it = cache.blocks.find(key);
    if (it != cache.blocks.end()) return *it->second;
  }

  auto block = std::make_unique<EnergyBlockMatrix>();
  block->op_name = op.name();
  block->energy = s;
  block->basis = energy_basis(op.labels(), s);
  block->matrix = SquareMatrix(block->basis.size());
  std::map<BasisState, std::size_t> index;
  for (std::size_t i = 0; i < block->basis.size(); ++i) index.emplace(block->basis[i], i);
  for (std::size_t j = 0; j < block->basis.size(); ++j) {
    for (const ImageTerm& term : op.image(block->basis[j])) {
      block->matrix(index.at(term.state), j).add_term(term.shift, term.coefficient);
    }
  }

  std::lock_guard lock(cache.mutex);
  return *cache.blocks.try_emplace(key, std::move(block)).first->second;
}

FockVector exp_apply(const GradedOperator& op, const FockVector& v, int t_order) {
  if (t_order < 0) throw DomainError("negative t order");
  if (t_order > v.window()[Var::t].hi) throw ConfigurationError("t order exceeds the vector's window");
  FockVector out = v;
  FockVector term = v;
  const Exponents t1 = exponents({{Var::t, 1}});
  for (int n = 1; n <= t_order && !term.is_zero(); ++n) {
    term = op.apply(term, t1, Rational(1, n));
    for (const auto& [s, c] : term.components()) out.add(s, c);
  }
  return out;
}

}  // namespace severi
