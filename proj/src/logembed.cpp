#include "sglat/logembed.hpp"

namespace sglat {

LogVector log_embed(const EmbeddingVector& e) {
    const mpfr_prec_t prec = e.precision_bits;
    LogVector out(e.level, prec);
    // Underflow floor: |sigma_j|^2 below 2^(-prec/2) signals that the
    // embedding was computed at insufficient precision.
    const MpReal floor2 = MpReal::pow2(-static_cast<long>(prec) / 2, prec);
    const MpReal half(0.5, prec);
    for (std::size_t j = 0; j < e.re.size(); ++j) {
        MpReal mag2 = e.re[j] * e.re[j] + e.im[j] * e.im[j];
        if (mag2 <= floor2)
            throw PrecisionError("log_embed: embedding magnitude underflow, re-embed at higher precision");
        out.v[j] = half * log(mag2);
    }
    return out;
}

LogVector log_embed(const RingElement& g, mpfr_prec_t precision_bits) {
    return log_embed(canonical_embed(g, precision_bits));
}

LogVector project_H0(const LogVector& v) {
    const mpfr_prec_t prec = v.precision_bits;
    MpReal mean(prec);
    for (const auto& x : v.v) mean += x;
    mean /= static_cast<long>(v.size());
    LogVector out(v.level, prec);
    for (std::size_t j = 0; j < v.size(); ++j) out.v[j] = v.v[j] - mean;
    return out;
}

namespace {
void check_compat(const LogVector& a, const LogVector& b) {
    if (!(a.level == b.level)) throw std::invalid_argument("LogVector: level mismatch");
}
}  // namespace

LogVector lv_add(const LogVector& a, const LogVector& b) {
    check_compat(a, b);
    LogVector out(a.level, std::max(a.precision_bits, b.precision_bits));
    for (std::size_t j = 0; j < a.size(); ++j) out.v[j] = a.v[j] + b.v[j];
    return out;
}

LogVector lv_sub(const LogVector& a, const LogVector& b) {
    check_compat(a, b);
    LogVector out(a.level, std::max(a.precision_bits, b.precision_bits));
    for (std::size_t j = 0; j < a.size(); ++j) out.v[j] = a.v[j] - b.v[j];
    return out;
}

LogVector lv_scale(const LogVector& a, const MpReal& s) {
    LogVector out(a.level, a.precision_bits);
    for (std::size_t j = 0; j < a.size(); ++j) out.v[j] = a.v[j] * s;
    return out;
}

LogVector lv_scale_int(const LogVector& a, long s) {
    LogVector out(a.level, a.precision_bits);
    for (std::size_t j = 0; j < a.size(); ++j) {
        out.v[j] = a.v[j];
        out.v[j] *= s;
    }
    return out;
}

MpReal lv_dot(const LogVector& a, const LogVector& b) {
    check_compat(a, b);
    MpReal acc(std::max(a.precision_bits, b.precision_bits));
    for (std::size_t j = 0; j < a.size(); ++j) acc.addmul(a.v[j], b.v[j]);
    acc *= 2;
    return acc;
}

MpReal lv_norm2(const LogVector& a) { return lv_dot(a, a); }

MpReal lv_linf(const LogVector& a) {
    MpReal best(a.precision_bits);
    for (const auto& x : a.v) {
        MpReal ax = abs(x);
        if (ax > best) best = ax;
    }
    return best;
}

double per_component_variance(const LogVector& v) {
    return (lv_norm2(v) / MpReal(static_cast<long>(v.level.n), v.precision_bits)).to_double();
}

}  // namespace sglat
