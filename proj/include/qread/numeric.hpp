#pragma once

#include <cmath>

namespace qread::num {

/// a*b - c*d to within ~1.5 ulp via fused multiply-add (Kahan's scheme).
/// Plain evaluation loses all significance when a*b and c*d nearly cancel,
/// which is the common case for the determinants handled here.
template <typename F>
inline F diff_of_products(F a, F b, F c, F d) {
    const F cd = c * d;
    const F err = std::fma(-c, d, cd);
    const F dif = std::fma(a, b, -cd);
    return dif + err;
}

/// 1 - sqrt(r) without cancellation for r near 1.
inline double one_minus_sqrt(double r) {
    return (1.0 - r) / (1.0 + std::sqrt(r));
}

}  // namespace qread::num
