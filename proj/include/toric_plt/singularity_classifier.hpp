#pragma once

#include "toric_plt/toric_fans.hpp"

#include <string>
#include <vector>

namespace toric_plt {

enum class TerminalKind { Smooth, CyclicQuotient, OrdinaryDoublePoint };

/// A three-dimensional terminal toric singularity up to lattice
/// automorphism, with the unimodular witness W such that W maps the
/// generators of the classified cone onto those of reference_cone().
struct TerminalToricType {
  TerminalKind kind = TerminalKind::Smooth;
  Integer r = 1;  // CyclicQuotient only
  Integer q = 0;  // CyclicQuotient only, 1 <= q <= r/2, gcd(q, r) = 1
  LatticeMatrix witness = LatticeMatrix::Identity(3, 3);

  std::string to_string() const;
};

/// The smooth orthant, <(1,0,0), (0,1,0), (1,q,r)>, or the model square cone.
ConeGerm reference_cone(const TerminalToricType& t);

TerminalToricType smooth_type();
TerminalToricType cyclic_quotient_type(const Integer& r, const Integer& q);
TerminalToricType odp_type();

/// Raised for a simplicial germ failing the Reid-Tai test.
class NotTerminalError : public DomainError {
 public:
  NotTerminalError(CyclicQuotientType type, TerminalityVerdict verdict);
  const CyclicQuotientType& quotient() const { return type_; }
  const TerminalityVerdict& verdict() const { return verdict_; }

 private:
  CyclicQuotientType type_;
  TerminalityVerdict verdict_;
};

TerminalToricType classify_germ(const ConeGerm& c);

struct TerminalOrder {
  Integer r;
  CyclicQuotientType action;  // canonical form of 1/r(b1, b2, b3)
};

/// Every r <= r_max for which 1/r(b1, b2, b3) is terminal, r = 1 included.
std::vector<TerminalOrder> enumerate_terminal_orders(const std::vector<Integer>& weights,
                                                     const Integer& r_max);

}  // namespace toric_plt
