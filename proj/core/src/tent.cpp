#include "horseshoe/tent.hpp"

#include "horseshoe/error.hpp"

namespace horseshoe {

Real tent_eval(const Real& x) {
  if (definitely_less(x, Real(0)) || definitely_greater(x, Real(1))) {
    throw Error(ErrorCode::domain, "tent argument outside [0,1]: " + x.to_string(12));
  }
  return abs(Real(1) - abs(Real(3) * x - Real(1)));
}

TentIterate::TentIterate(long n) : n_(n) {
  if (n < 1) throw Error(ErrorCode::domain, "tent iterate needs n >= 1");
  branches_ = LegCount::power(3, mpz_class(n));
}

Real TentIterate::log_slope() const { return branches_.log(); }

std::vector<Real> TentIterate::breakpoints(std::size_t limit) const {
  if (!branches_.fits_u64() || branches_.value() + 1 > limit) {
    throw Error(ErrorCode::overflow, "3^" + std::to_string(n_) + " breakpoints exceed the limit of " +
                                         std::to_string(limit));
  }
  const unsigned long count = branches_.value().get_ui();
  std::vector<Real> out;
  out.reserve(count + 1);
  for (unsigned long j = 0; j <= count; ++j) out.push_back(Real(mpq_class(mpz_class(j), branches_.value())));
  return out;
}

Real TentIterate::eval(const Real& x) const {
  if (definitely_less(x, Real(0)) || definitely_greater(x, Real(1))) {
    throw Error(ErrorCode::domain, "tent argument outside [0,1]: " + x.to_string(12));
  }
  return zigzag(branches_.value(), x);
}

TentIterate tent_iterate(long n) { return TentIterate(n); }

}  // namespace horseshoe
