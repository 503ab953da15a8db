#pragma once

#include <utility>
#include <vector>

#include "hypercert/homogeneous.hpp"

namespace hypercert {

// Ordered tuple of n homogeneous forms, all in m variables of a common
// degree k, read as a polynomial map R^m -> R^n. Zero components allowed.
class PolyMap {
 public:
  PolyMap(std::vector<HomogeneousPoly> components, int m, int k)
      : comps_(std::move(components)), m_(m), k_(k) {
    for (const auto& c : comps_) {
      if (c.nvars() != m_ || c.degree() != k_)
        throw error("polynomial map components must share arity and degree");
    }
  }

  static PolyMap identity(int n) {
    std::vector<HomogeneousPoly> cs;
    cs.reserve(n);
    for (int i = 0; i < n; ++i) cs.push_back(HomogeneousPoly::variable(n, i));
    return PolyMap(std::move(cs), n, 1);
  }

  int component_count() const { return static_cast<int>(comps_.size()); }
  int domain_vars() const { return m_; }
  int map_degree() const { return k_; }
  const HomogeneousPoly& component(int i) const { return comps_.at(i); }
  const std::vector<HomogeneousPoly>& components() const { return comps_; }

  std::vector<Rat> eval(const std::vector<Rat>& x) const {
    std::vector<Rat> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c.eval(x));
    return out;
  }

 private:
  std::vector<HomogeneousPoly> comps_;
  int m_, k_;
};

// q(phi(x)) for q in n variables and phi with n components. The result is
// homogeneous of degree deg(q) * k.
inline HomogeneousPoly compose(const HomogeneousPoly& q, const PolyMap& phi) {
  if (q.nvars() != phi.component_count())
    throw malformed_witness_error("composition arity mismatch: polynomial has " +
                                  std::to_string(q.nvars()) + " variables, map has " +
                                  std::to_string(phi.component_count()) + " components");
  std::vector<SparsePoly> comp;
  comp.reserve(phi.component_count());
  for (const auto& c : phi.components()) comp.push_back(c.sparse());
  SparsePoly r = q.sparse().substitute(comp);
  return HomogeneousPoly(std::move(r), q.degree() * phi.map_degree());
}

// Graded tuple in T_{mu,k}^{m,d}: d slots, the first d-mu identically zero,
// then forms of degrees 0, k, ..., (mu-1)k. Slot j >= d-mu carries degree
// (j-(d-mu))*k. Zero slots are stored explicitly.
class GradedTuple {
 public:
  GradedTuple(int m, int d, int mu, int k, std::vector<HomogeneousPoly> slots)
      : m_(m), d_(d), mu_(mu), k_(k), slots_(std::move(slots)) {
    if (mu_ < 2 || mu_ > d_) throw error("graded tuple needs 2 <= mu <= d");
    if (static_cast<int>(slots_.size()) != d_) throw error("graded tuple needs d slots");
    for (int j = 0; j < d_; ++j) {
      if (j < d_ - mu_) {
        if (!slots_[j].is_zero())
          throw error("graded tuple slot " + std::to_string(j) + " must be zero");
      }
      if (slots_[j].nvars() != m_) throw error("graded tuple slot arity mismatch");
      if (!slots_[j].is_zero() && slots_[j].degree() != slot_degree(j))
        throw error("graded tuple slot " + std::to_string(j) + " has the wrong degree");
    }
  }

  // Tuple with given entries in the last mu slots (degrees 0, k, ..., (mu-1)k).
  static GradedTuple from_tail(int m, int d, int mu, int k,
                               std::vector<HomogeneousPoly> tail) {
    if (static_cast<int>(tail.size()) != mu) throw error("tail must have mu entries");
    std::vector<HomogeneousPoly> slots;
    slots.reserve(d);
    for (int j = 0; j < d - mu; ++j) slots.push_back(HomogeneousPoly::zero(m, 0));
    for (auto& t : tail) slots.push_back(std::move(t));
    // normalize declared degrees of zero slots
    GradedTuple g(m, d, mu, k, std::move(slots));
    return g;
  }

  // The hyperwron-recovery tuple (1, 0, ..., 0) in T_{d,k}^{m,d}.
  static GradedTuple wronskian_selector(int m, int d, int k) {
    std::vector<HomogeneousPoly> slots;
    slots.push_back(HomogeneousPoly::constant(m, Rat(1)));
    for (int j = 1; j < d; ++j) slots.push_back(HomogeneousPoly::zero(m, j * k));
    return GradedTuple(m, d, d, k, std::move(slots));
  }

  int m() const { return m_; }
  int d() const { return d_; }
  int mu() const { return mu_; }
  int k() const { return k_; }
  int slot_degree(int j) const { return j < d_ - mu_ ? 0 : (j - (d_ - mu_)) * k_; }
  const HomogeneousPoly& slot(int j) const { return slots_.at(j); }
  bool all_zero() const {
    for (const auto& s : slots_)
      if (!s.is_zero()) return false;
    return true;
  }

 private:
  int m_, d_, mu_, k_;
  std::vector<HomogeneousPoly> slots_;
};

}  // namespace hypercert
