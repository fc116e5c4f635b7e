#include <cstdio>
#include "sglat/params.hpp"
#include "sglat/ring.hpp"
#include "sglat/logembed.hpp"
#include "sglat/units.hpp"
#include "sglat/lattice.hpp"
int main() {
    using namespace sglat;
    printf("trigamma(1)=%.12f sigma_4=%.6f gth=%.3f\n", trigamma(1), sigma_d(4), gamma_threshold(4,256,1.17));
    auto p = make_tower(4);
    auto x3 = cyclotomic_unit(3, p);
    printf("norm(xi_3)=%s unit=%d\n", field_norm(x3).get_str().c_str(), (int)is_unit(x3));
    auto b = log_unit_basis(p, 256);
    printf("min gso %.6f ratio %.6f\n", b.min_gso_norm(), pinned().sigma_t / b.min_gso_norm());
    auto t = project_H0(log_embed(x3, 256));
    auto res = babai_nearest_plane(b, t);
    printf("babai coeffs:"); for (auto c : res.coeffs) printf(" %lld", (long long)c); printf(" rho_inf=%.6g\n", res.rho_inf);
    auto g = ring_mul_ntt(x3, x3);
    auto h = ring_mul_schoolbook(x3, x3);
    printf("ntt==schoolbook: %d\n", (int)(g == h));
    auto q = divide_exact(g, x3);
    printf("divide ok: %d\n", (int)(q == x3));
    return 0;
}
