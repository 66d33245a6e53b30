#include "octa/sampling.hpp"

#include "octa/projline.hpp"

#include <cmath>

namespace octa::sample {

QSqrt2 small_q(Rng& rng, long range, long den) {
    std::uniform_int_distribution<long> num(-range, range);
    std::uniform_int_distribution<long> d(1, den);
    return {mpq_class(num(rng), d(rng)), mpq_class(num(rng), d(rng))};
}

QSqrt2 generic(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> ud(lo, hi);
    std::uniform_int_distribution<long> small(-1000, 1000);
    mpq_class b(small(rng), 7919);
    double target = ud(rng) - b.get_d() * std::sqrt(2.0);
    mpq_class a(static_cast<long>(std::llround(target * 1e6)), 1000000);
    a += mpq_class(small(rng), 1000000007L);
    return {a, b};
}

Vec2 point(Rng& rng) {
    for (;;) {
        Vec2 p = {generic(rng, -2.3, 2.3), generic(rng, -2.3, 2.3)};
        if (octagon::contains(p) && octagon::boundary_side(p) < 0) return p;
    }
}

ProjPoint direction(Rng& rng, int k) {
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (;;) {
        double th = (k + 0.001 + 0.998 * ud(rng)) * M_PI / 8;
        ProjPoint p(generic(rng, 1.0 / std::tan(th), 1.0 / std::tan(th)));
        if (sector_of(p) == k) return p;
    }
}

ProjPoint direction(Rng& rng) { return direction(rng, static_cast<int>(rng() % 8)); }

ProjPoint direction_any(Rng& rng) {
    std::uniform_real_distribution<double> ud(1e-4, M_PI - 1e-4);
    const double th = ud(rng);
    return ProjPoint(generic(rng, 1.0 / std::tan(th), 1.0 / std::tan(th)));
}

}  // namespace octa::sample
