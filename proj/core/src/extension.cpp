#include "birkhoff/extension.hpp"

#include "birkhoff/error.hpp"

namespace birkhoff {

CachedObjective::CachedObjective(Objective f) : f_(std::move(f)), state_(std::make_shared<State>()) {
  if (!f_.eval) throw InvalidArgument("objective has no evaluation function");
}

double CachedObjective::lookup(const Objective& f, State& st, const Permutation& p) {
  {
    std::lock_guard lock(st.mu);
    if (auto it = st.values.find(p); it != st.values.end()) {
      ++st.hits;
      return it->second;
    }
  }
  const double v = f.eval(p);
  std::lock_guard lock(st.mu);
  ++st.misses;
  st.values.emplace(p, v);
  return v;
}

double CachedObjective::operator()(const Permutation& p) const { return lookup(f_, *state_, p); }

Objective CachedObjective::view() const {
  return Objective{f_.n, [f = f_, st = state_](const Permutation& p) { return lookup(f, *st, p); },
                   f_.name};
}

std::size_t CachedObjective::hits() const {
  std::lock_guard lock(state_->mu);
  return state_->hits;
}

std::size_t CachedObjective::misses() const {
  std::lock_guard lock(state_->mu);
  return state_->misses;
}

ExtensionValue evaluate(BirkhoffDecomposition d, const Objective& f, bool truncated) {
  ExtensionValue ev;
  ev.truncated = truncated;
  ev.per_term_f.reserve(d.terms.size());
  double weighted = 0.0;
  double weights = 0.0;
  for (const auto& t : d.terms) {
    const double v = f(t.permutation);
    ev.per_term_f.push_back(v);
    weighted += t.alpha * v;
    weights += t.alpha;
  }
  if (weights <= 0.0) throw InvalidArgument("decomposition has no positive coefficients");
  ev.weight_sum = weights;
  ev.value = truncated ? weighted / weights : weighted;
  ev.decomposition = std::move(d);
  return ev;
}

ExtensionValue evaluate(const DoublyStochastic& a, const ScoreMatrix& s, const Objective& f,
                        std::optional<std::size_t> max_terms) {
  if (f.n != a.size()) throw InvalidArgument("objective and matrix dimensions differ");
  return evaluate(score_decompose(a, s, max_terms), f, max_terms.has_value());
}

SquareMatrix gradient(const ExtensionValue& ev, std::size_t n) {
  const auto& terms = ev.decomposition.terms;
  const std::size_t m = terms.size();
  const double scale = ev.truncated ? 1.0 / ev.weight_sum : 1.0;

  // Centering at F changes nothing along tangent directions when the
  // coefficients sum to one, and in truncated mode it is exactly the
  // derivative of the normalizer: d(N/W) = (dN - F dW) / W.
  std::vector<double> adjoint(m);
  for (std::size_t k = 0; k < m; ++k) adjoint[k] = scale * (ev.per_term_f[k] - ev.value);

  SquareMatrix g(n);
  for (std::size_t k = m; k-- > 0;) {
    const Cell c = terms[k].argmin_cell;
    g(c.row, c.col) += adjoint[k];
    for (std::size_t j = 0; j < k; ++j) {
      if (terms[j].permutation[c.row] == c.col) adjoint[j] -= adjoint[k];
    }
  }
  return g;
}

SquareMatrix gradient(const DoublyStochastic& a, const ScoreMatrix& s, const Objective& f,
                      std::optional<std::size_t> max_terms) {
  return gradient(evaluate(a, s, f, max_terms), a.size());
}

RoundResult round(const ExtensionValue& ev) {
  const auto& terms = ev.decomposition.terms;
  if (terms.empty()) throw InvalidArgument("cannot round an empty decomposition");
  std::size_t best = 0;
  for (std::size_t k = 1; k < terms.size(); ++k) {
    if (ev.per_term_f[k] < ev.per_term_f[best]) best = k;
  }
  return RoundResult{terms[best].permutation, ev.per_term_f[best]};
}

RoundResult round(const DoublyStochastic& a, const ScoreMatrix& s, const Objective& f,
                  std::optional<std::size_t> max_terms) {
  return round(evaluate(a, s, f, max_terms));
}

}  // namespace birkhoff
