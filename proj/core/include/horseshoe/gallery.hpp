#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "horseshoe/interval_map.hpp"
#include "horseshoe/product.hpp"

namespace horseshoe {

enum class GalleryId { identity, hazard, phi01, phi0b, phi_beta, phi_a, varphi_ab, psi_b_product };

const char* to_string(GalleryId id) noexcept;
/// Accepts the bare family name (the part before any ':').
GalleryId parse_gallery_id(std::string_view name);

struct GalleryOptions {
  unsigned precision = kDefaultPrecision;
  std::size_t k_max = kDefaultKMax;
};

/// True when j = n^n for some n >= 1.
bool is_tower(std::size_t j);
/// Smallest n^n >= j, if it fits.
std::optional<std::size_t> next_tower(std::size_t j);

/// Blocks [2^-n, 2^-n+1] with 2n+1 legs, accumulating at 0.
IntervalMap hazard_map(const GalleryOptions& options = {});
/// Segments of length 6/(pi^2 j^2); 3^j legs when j is a tower index.
IntervalMap phi_zero_one(const GalleryOptions& options = {});
/// Segments of length C 3^{-(j-1) r}; 3^j legs at tower indices.
IntervalMap phi_zero_b(const Real& r, const GalleryOptions& options = {});
/// Segments of length C / n^beta; 3^n legs for n >= 2.
IntervalMap phi_beta(const Real& beta, const GalleryOptions& options = {});
/// Blocks of length C 3^{-(n-1) r} with 3^n legs, accumulating at 1.
IntervalMap phi_a(const Real& r, const GalleryOptions& options = {});
/// Two-half construction with lower/upper mean dimension (a, b).
IntervalMap varphi_ab(const Real& a, const Real& b, const GalleryOptions& options = {});
/// n-fold product of phi_a with a = b/n.
ProductMap psi_b_product(const Real& b, long n, const GalleryOptions& options = {});

/// Map for a gallery string such as "phi_a:r=1" or "varphi_ab:a=0,b=1/2".
System build_gallery(std::string_view spec, const GalleryOptions& options = {});

}  // namespace horseshoe
