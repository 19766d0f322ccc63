#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "horseshoe/interval_map.hpp"

namespace horseshoe {

using Point = std::vector<Real>;

/// Coordinatewise product on [0,1]^n with the sum metric.
class ProductMap {
 public:
  explicit ProductMap(std::vector<IntervalMap> factors, std::string name = {});

  std::size_t dimension() const noexcept { return factors_.size(); }
  const std::vector<IntervalMap>& factors() const noexcept { return factors_; }
  const std::string& name() const noexcept { return name_; }
  /// Hölder exponent of the product when every factor declares one.
  std::optional<Real> holder_exponent() const;

  Point eval(const Point& x, bool* truncated = nullptr) const;
  static Real distance(const Point& x, const Point& y);

 private:
  std::vector<IntervalMap> factors_;
  std::string name_;
};

ProductMap product(std::vector<IntervalMap> factors);

/// Either an interval map or a product map, viewed as a map of [0,1]^d.
class System {
 public:
  System(IntervalMap map);  // NOLINT(google-explicit-constructor)
  System(ProductMap map);   // NOLINT(google-explicit-constructor)

  std::size_t dimension() const;
  std::string name() const;
  bool is_exact() const;
  Point step(const Point& x, bool* truncated = nullptr) const;
  Real distance(const Point& x, const Point& y) const;
  /// Largest diameter of the phase space in this metric (1 or d).
  Real diameter() const;

  const IntervalMap* interval_map() const { return std::get_if<IntervalMap>(&map_); }
  const ProductMap* product_map() const { return std::get_if<ProductMap>(&map_); }

 private:
  std::variant<IntervalMap, ProductMap> map_;
};

}  // namespace horseshoe
