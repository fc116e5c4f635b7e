#include "sglat/lattice.hpp"

#include <stdexcept>

namespace sglat {

GsoData gram_schmidt(const std::vector<LogVector>& basis) {
    if (basis.empty()) return {};
    const mpfr_prec_t prec = basis[0].precision_bits;
    const MpReal floor = MpReal::pow2(-static_cast<long>(prec) / 2, prec);
    GsoData g;
    g.mu.assign(basis.size(), {});
    for (std::size_t i = 0; i < basis.size(); ++i) {
        LogVector star = basis[i];
        g.mu[i].resize(i);
        for (std::size_t j = 0; j < i; ++j) {
            MpReal m = lv_dot(basis[i], g.bstar[j]) / g.norm2[j];
            g.mu[i][j] = m;
            for (std::size_t t = 0; t < star.size(); ++t) star.v[t] -= m * g.bstar[j].v[t];
        }
        MpReal n2 = lv_norm2(star);
        if (n2 <= floor) throw PrecisionError("gram_schmidt: rank deficiency");
        g.bstar.push_back(std::move(star));
        g.norm2.push_back(std::move(n2));
    }
    return g;
}

CVPResult babai_nearest_plane(const UnitLatticeBasis& basis, const LogVector& t) {
    const int r = basis.rank();
    const mpfr_prec_t prec = basis.precision_bits;

    LogVector w(basis.level, prec);
    if (t.size() != w.size()) throw std::invalid_argument("babai_nearest_plane: dimension mismatch");
    // Re-round the target to the basis precision up front.
    for (std::size_t i = 0; i < w.size(); ++i)
        mpfr_set(w.v[i].raw(), t.v[i].raw(), MPFR_RNDN);

    CVPResult res;
    res.coeffs.assign(r, 0);
    for (int i = r - 1; i >= 0; --i) {
        MpReal m = lv_dot(w, basis.bstar[i]) / basis.bstar_norm2[i];
        const std::int64_t ci = round_even(m).round_to_int64();
        res.coeffs[i] = ci;
        if (ci != 0)
            for (std::size_t tt = 0; tt < w.size(); ++tt)
                w.v[tt].submul(MpReal(static_cast<long>(ci), prec), basis.b[i].v[tt]);
    }
    res.rho = w;
    res.rho_inf = lv_linf(w).to_double();
    res.v = lv_sub(t, w);
    return res;
}

UnitExponents decode_exponents(const CVPResult& res, const UnitLatticeBasis& basis) {
    UnitExponents e;
    e.level = basis.level;
    for (std::size_t i = 0; i < res.coeffs.size(); ++i)
        if (res.coeffs[i] != 0) e.exps[basis.order[i]] = res.coeffs[i];
    return e;
}

namespace {

using Row = std::vector<mpz_class>;

mpq_class dotq(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    mpq_class acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

struct RationalGso {
    std::vector<std::vector<mpq_class>> star;
    std::vector<mpq_class> norm2;
    std::vector<std::vector<mpq_class>> mu;

    void compute(const std::vector<Row>& rows) {
        const std::size_t r = rows.size();
        star.assign(r, {});
        norm2.assign(r, 0);
        mu.assign(r, {});
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<mpq_class> v(rows[i].size());
            for (std::size_t t = 0; t < v.size(); ++t) v[t] = rows[i][t];
            mu[i].assign(i, 0);
            for (std::size_t j = 0; j < i; ++j) {
                // <v, b*_j> = <b_i, b*_j> by orthogonality of earlier subtractions
                mpq_class m = dotq(v, star[j]) / norm2[j];
                mu[i][j] = m;
                for (std::size_t t = 0; t < v.size(); ++t) v[t] -= m * star[j][t];
            }
            norm2[i] = dotq(v, v);
            if (norm2[i] == 0) throw std::invalid_argument("lll_reduce: dependent rows");
            star[i] = std::move(v);
        }
    }
};

}  // namespace

std::vector<Row> lll_reduce(std::vector<Row> rows, double delta) {
    if (rows.empty()) return rows;
    if (!(delta > 0.25 && delta < 1.0))
        throw std::domain_error("lll_reduce: need 1/4 < delta < 1");
    mpq_class dq(static_cast<long>(delta * 1000000), 1000000L);
    dq.canonicalize();

    // Textbook rational LLL with incremental mu updates on size reduction and
    // a full GSO recompute after swaps. Dimensions here are small.
    RationalGso g;
    g.compute(rows);
    const std::size_t r = rows.size();

    auto nearest = [](const mpq_class& m) {
        mpz_class q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), m.get_num().get_mpz_t(),
                    m.get_den().get_mpz_t());
        if (rem * 2 >= m.get_den()) q += 1;
        return q;
    };

    std::size_t kk = 1;
    while (kk < r) {
        for (std::size_t j = kk; j-- > 0;) {
            const mpz_class q = nearest(g.mu[kk][j]);
            if (q != 0) {
                for (std::size_t t = 0; t < rows[kk].size(); ++t) rows[kk][t] -= q * rows[j][t];
                for (std::size_t t = 0; t < j; ++t) g.mu[kk][t] -= q * g.mu[j][t];
                g.mu[kk][j] -= q;
            }
        }
        const mpq_class rhs = (dq - g.mu[kk][kk - 1] * g.mu[kk][kk - 1]) * g.norm2[kk - 1];
        if (g.norm2[kk] >= rhs) {
            ++kk;
        } else {
            std::swap(rows[kk], rows[kk - 1]);
            g.compute(rows);
            kk = kk > 1 ? kk - 1 : 1;
        }
    }
    return rows;
}

}  // namespace sglat
