#include "horseshoe/product.hpp"

#include <utility>

#include "horseshoe/error.hpp"

namespace horseshoe {

ProductMap::ProductMap(std::vector<IntervalMap> factors, std::string name)
    : factors_(std::move(factors)), name_(std::move(name)) {
  if (factors_.empty()) throw Error(ErrorCode::invalid_argument, "product needs at least one factor");
  if (name_.empty()) {
    for (std::size_t i = 0; i < factors_.size(); ++i) name_ += (i ? "x" : "") + factors_[i].name();
  }
}

std::optional<Real> ProductMap::holder_exponent() const {
  std::optional<Real> out;
  for (const IntervalMap& f : factors_) {
    if (!f.params() || !f.params()->holder_exponent) return std::nullopt;
    out = out ? min(*out, *f.params()->holder_exponent) : *f.params()->holder_exponent;
  }
  return out;
}

Point ProductMap::eval(const Point& x, bool* truncated) const {
  if (x.size() != factors_.size()) throw Error(ErrorCode::invalid_argument, "point dimension mismatch");
  Point out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    MapValue v = factors_[i].eval(x[i]);
    if (truncated && v.truncated) *truncated = true;
    out.push_back(std::move(v.value));
  }
  return out;
}

Real ProductMap::distance(const Point& x, const Point& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::invalid_argument, "point dimension mismatch");
  Real sum(0);
  for (std::size_t i = 0; i < x.size(); ++i) sum += abs(x[i] - y[i]);
  return sum;
}

ProductMap product(std::vector<IntervalMap> factors) { return ProductMap(std::move(factors)); }

System::System(IntervalMap map) : map_(std::move(map)) {}
System::System(ProductMap map) : map_(std::move(map)) {}

std::size_t System::dimension() const {
  if (const auto* p = product_map()) return p->dimension();
  return 1;
}

std::string System::name() const {
  if (const auto* p = product_map()) return p->name();
  return interval_map()->name();
}

bool System::is_exact() const {
  if (const auto* p = product_map()) {
    for (const IntervalMap& f : p->factors()) {
      if (!f.is_exact()) return false;
    }
    return true;
  }
  return interval_map()->is_exact();
}

Point System::step(const Point& x, bool* truncated) const {
  if (const auto* p = product_map()) return p->eval(x, truncated);
  if (x.size() != 1) throw Error(ErrorCode::invalid_argument, "point dimension mismatch");
  MapValue v = interval_map()->eval(x[0]);
  if (truncated && v.truncated) *truncated = true;
  return Point{std::move(v.value)};
}

Real System::distance(const Point& x, const Point& y) const { return ProductMap::distance(x, y); }

Real System::diameter() const { return Real(static_cast<long>(dimension())); }

}  // namespace horseshoe
