#pragma once

// The resolvent module B = A + I_G with the twisted G-action
//   s * a = s.a,   s * (t - 1) = a_{s,t} + (st - 1) - (s - 1),
// the operator w = gamma - 1, the trace, the distinguished submodules, and
// the relation certificate (M, N) from which delta is extracted.

#include <stdexcept>
#include <string>
#include <vector>

#include "logcap/group_ring.hpp"
#include "logcap/instance.hpp"
#include "logcap/lattice.hpp"

namespace logcap {

class InfeasibleRelation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CertificateInconsistent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PrecisionModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a + sum_{t != 1} lam_t (t - 1); lam is indexed by t.index - 1.
struct ResolventElt {
  Vec a;
  Vec lam;
  bool operator==(const ResolventElt&) const = default;
};

/// Relations  e_i b_i = sum_j mu_ij * b_j + w * sum_j nu_ij * b_j  with
/// mu_ij in I_G, packaged as M = [e_i delta_ij - mu_ij] and N = [nu_ij];
/// plus the gamma-form  e_i b_i = sum_j lambda_ij * b_j + mu_i * gamma.
struct RelationCertificate {
  RingMatrix<GroupRingElt> m;
  RingMatrix<GroupRingElt> n;
  RingMatrix<GroupRingElt> m_gamma;   // [e_i delta_ij - lambda_ij]
  std::vector<GroupRingElt> mu_gamma;
  std::vector<ResolventElt> residuals;        // w-form, all zero when verified
  std::vector<ResolventElt> residuals_gamma;  // gamma-form
  unsigned working_precision = 0;

  bool verified() const;
};

class Resolvent {
 public:
  explicit Resolvent(const Instance& inst);

  const Instance& instance() const { return inst_; }
  const Modulus& modulus() const { return inst_.modulus(); }
  /// Coordinates (Atilde, gamma, (t-1) for t != 1 in element order).
  const Ambient& module() const { return b_; }
  std::size_t a_rank() const { return inst_.a_rank(); }
  std::size_t rank() const { return b_.rank(); }

  Vec coords(const ResolventElt& b) const;
  ResolventElt split(const Vec& coords) const;
  ResolventElt from_a(const Vec& a) const;
  /// b_i = tau_i - 1.
  ResolventElt generator_b(std::size_t i) const;
  ResolventElt gamma() const { return from_a(inst_.gamma()); }
  /// Basis element (t - 1); zero vector for t = 1.
  ResolventElt augmentation_basis(GroupElt t) const;

  ResolventElt star_act(const GroupRingElt& x, const ResolventElt& b) const;
  ResolventElt star_act(GroupElt g, const ResolventElt& b) const;
  ResolventElt omega_act(const ResolventElt& b) const;
  /// Tr * b, returned in A. Throws std::logic_error if the I_G part of the
  /// result is nonzero.
  Vec trace(const ResolventElt& b) const;
  /// x acting on an element of A.
  Vec act_on_a(const GroupRingElt& x, const Vec& a) const;

  // Linear maps in row convention (coordinates of B -> B or B -> A).
  const ZModMatrix& star_map(GroupElt g) const { return star_.at(g.index); }
  const ZModMatrix& omega_map() const { return omega_; }
  const ZModMatrix& trace_map() const { return trace_; }      // B -> A
  const ZModMatrix& omega_to_a_map() const { return omega_a_; }  // B -> A

  Submodule whole() const { return b_.whole(); }
  /// Btilde = Atilde + I_G.
  Submodule degree_zero_part() const;
  /// I_G * B, or I_G * Btilde when `degree_zero` is set.
  Submodule ig_star_b(bool degree_zero) const;
  /// Atilde + I_G^2 inside B.
  Submodule atilde_plus_ig_squared() const;
  /// Lambda[G]-span of b_1..b_s in B.
  Submodule lambda_span_of_generators() const;
  /// Embeds a submodule of A into B.
  Submodule embed_a(const Submodule& s) const;
  /// Image of a submodule of B under the trace (a submodule of A).
  Submodule trace_image(const Submodule& s) const;
  /// w * S as a submodule of A.
  Submodule omega_image(const Submodule& s) const;
  /// I_G * gamma = span{(1 - t) gamma} inside A.
  Submodule ig_gamma() const;

  RelationCertificate relation_matrices() const;
  /// delta with det(M - wN) = Tr - w delta; asserts the w^0 part is Tr.
  GroupRingElt delta(const RelationCertificate& cert) const;
  /// span{a_{t_i,t_j} - a_{t_j,t_i} : i < j} inside A.
  Submodule boundary_module() const;

 private:
  Instance inst_;
  Ambient b_;
  std::vector<ZModMatrix> star_;
  ZModMatrix omega_;
  ZModMatrix trace_;
  ZModMatrix omega_a_;
};

}  // namespace logcap
