#pragma once

#include <vector>

#include "sglat/mpreal.hpp"
#include "sglat/params.hpp"
#include "sglat/ring.hpp"

namespace sglat {

// Vector of log|sigma_j(g)| over the representatives J (odd j in [1,n)).
// Norms and inner products use the canonical n-dimensional convention:
// each conjugate pair contributes twice, so <u,v> = 2 * sum_J u_j v_j.
// The printed Gram-Schmidt norms and the sigma_d^2 statistic both follow
// this convention.
struct LogVector {
    TowerParams level;
    mpfr_prec_t precision_bits = 0;
    std::vector<MpReal> v;

    LogVector() = default;
    LogVector(const TowerParams& p, mpfr_prec_t prec)
        : level(p), precision_bits(prec), v(p.half(), MpReal(prec)) {}
    std::size_t size() const { return v.size(); }
};

LogVector log_embed(const EmbeddingVector& e);
LogVector log_embed(const RingElement& g, mpfr_prec_t precision_bits);

// Subtract the mean (2/n) * sum_J v_j from every entry.
LogVector project_H0(const LogVector& v);

LogVector lv_add(const LogVector& a, const LogVector& b);
LogVector lv_sub(const LogVector& a, const LogVector& b);
LogVector lv_scale(const LogVector& a, const MpReal& s);
LogVector lv_scale_int(const LogVector& a, long s);

// Doubled (n-dimensional) inner product and squared norm.
MpReal lv_dot(const LogVector& a, const LogVector& b);
MpReal lv_norm2(const LogVector& a);
MpReal lv_linf(const LogVector& a);

// (1/n) * ||v||^2 in the n-dimensional convention, i.e. the mean square
// over embedding coordinates.
double per_component_variance(const LogVector& v);

}  // namespace sglat
