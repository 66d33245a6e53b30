#include "octa/verify.hpp"

#include "octa/cfmaps.hpp"
#include "octa/errors.hpp"
#include "octa/natext.hpp"
#include "octa/parallel.hpp"
#include "octa/sampling.hpp"
#include "octa/surface.hpp"
#include "octa/symbolic.hpp"
#include "octa/teich.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace octa {

namespace {

const QSqrt2 P(1, 1);

// independent stream per (criterion, case)
sample::Rng case_rng(const VerifyOptions& opt, int id, std::size_t i) {
    std::seed_seq ss{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                     static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(i)};
    return sample::Rng(ss);
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// count of failing cases, computed in parallel
std::size_t count_failures(std::size_t n, const std::function<bool(std::size_t)>& ok) {
    std::vector<char> bad(n, 0);
    parallel_for(n, [&](std::size_t i) { bad[i] = !ok(i); });
    std::size_t c = 0;
    for (char b : bad) c += b;
    return c;
}

ProjPoint non_terminating_direction(sample::Rng& rng) {
    for (;;) {
        ProjPoint u = sample::direction(rng);
        if (cf_expand(u, 60).status == CFStatus::Generic) return u;
    }
}

XReal X(const QSqrt2& v) { return {0, v}; }

std::pair<XReal, XReal> interval(sample::Rng& rng, double lo, double hi) {
    QSqrt2 a = sample::generic(rng, lo, hi), b = sample::generic(rng, lo, hi);
    if (b < a) std::swap(a, b);
    return {X(a), X(b)};
}

PlanePoint section_point(sample::Rng& rng) {
    ProjPoint u = sample::direction(rng, 1 + static_cast<int>(rng() % 7));
    QSqrt2 t = sample::generic(rng, 0.001, 0.999);
    return {u, ProjPoint(P + t / (QSqrt2(1) - t))};
}

CriterionResult relabeling(const VerifyOptions& opt) {
    CriterionResult r{1, "relabeling identity c(nu_k tau) = pi_k c(tau)", false, "", 0};
    const std::size_t per = 200;
    std::size_t bad = count_failures(8 * per, [&](std::size_t i) {
        auto rng = case_rng(opt, 1, i);
        const int k = static_cast<int>(i / per);
        Trajectory tau = make_trajectory(sample::point(rng), forward_vector(sample::direction(rng)));
        return trace(apply_isometry(k, tau), 200).letters == permute(trace(tau, 200).letters, k);
    });
    r.pass = bad == 0;
    r.detail = std::to_string(8 * per - bad) + "/" + std::to_string(8 * per) + " (k, trajectory) pairs equal on 200 letters";
    return r;
}

// c(tau') on (t_1, t_{n-2}) against derive(c(tau)): derived letters with sandwich index 2..n-3 always
// lie in that window, the letters with index 1 and n-2 may or may not
bool window_match(const Trajectory& tau, const QSqrt2& T) {
    CuttingSeq c = trace_time(tau, T, true);
    const std::string& w = c.letters;
    const std::size_t n = w.size();
    if (n < 6) return true;
    std::string core, front, back;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (w[i - 1] != w[i + 1]) continue;
        if (i == 1) front = w[i];
        else if (i == n - 2) back = w[i];
        else core.push_back(w[i]);
    }
    CuttingSeq d = trace_time(derived_trajectory(tau), c.exact_times[n - 2], true);
    std::string window;
    for (std::size_t j = 0; j < d.letters.size(); ++j)
        if (c.exact_times[1] < d.exact_times[j]) window.push_back(d.letters[j]);
    for (const std::string& f : {std::string(), front})
        for (const std::string& b : {std::string(), back})
            if (window == f + core + b) return true;
    return false;
}

CriterionResult derivation(const VerifyOptions& opt) {
    CriterionResult r{2, "derivation equivalence derive(c(tau)) = c(tau')", false, "", 0};
    const std::size_t n = 1000;
    std::size_t bad = count_failures(n, [&](std::size_t i) {
        auto rng = case_rng(opt, 2, i);
        Trajectory tau = make_trajectory(sample::point(rng), forward_vector(sample::direction(rng, 0)));
        return window_match(tau, QSqrt2(200));
    });
    r.pass = bad == 0;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " trajectories match on the exact time window";
    return r;
}

CriterionResult itinerary(const VerifyOptions& opt) {
    CriterionResult r{3, "renormalization diagrams = Farey itinerary (30 steps)", false, "", 0};
    const std::size_t n = 500;
    std::vector<std::size_t> stages(n);
    std::size_t bad = count_failures(n, [&](std::size_t i) {
        auto rng = case_rng(opt, 3, i);
        ProjPoint u = non_terminating_direction(rng);
        Trajectory tau = make_trajectory(sample::point(rng), forward_vector(u));
        StagedRenorm s = renormalize_staged(tau, 30);
        stages[i] = s.stages;
        return s.reseed_ok && s.d == cf_expand(u, 30).entries;
    });
    std::size_t total = 0;
    for (auto s : stages) total += s;
    r.pass = bad == 0;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " directions, " +
               fmt("%.1f", static_cast<double>(total) / n) + " tracing stages on average";
    return r;
}

CriterionResult recognition(const VerifyOptions& opt) {
    CriterionResult r{4, "direction recognition from 25 entries", false, "", 0};
    const std::size_t n = 200;
    std::vector<double> widths(n, 0);
    std::vector<char> contains(n, 0);
    std::vector<std::size_t> run(n, 0);  // longest run of 1s or 7s among the entries
    parallel_for(n, [&](std::size_t i) {
        auto rng = case_rng(opt, 4, i);
        ProjPoint u = sample::direction(rng);
        Trajectory tau = make_trajectory(sample::point(rng), forward_vector(u));
        StagedRenorm s = renormalize_staged(tau, 25);
        if (s.d.size() < 25) {
            widths[i] = INFINITY;
            return;
        }
        DirectionInterval I = nested_interval(s.d, 24);
        contains[i] = I.contains(u);
        widths[i] = I.width;
        for (std::size_t k = 0, cur = 0; k < s.d.size(); ++k) {
            cur = (s.d[k] == 1 || s.d[k] == 7) && k > 0 && s.d[k] == s.d[k - 1] ? cur + 1 : 1;
            if (s.d[k] == 1 || s.d[k] == 7) run[i] = std::max(run[i], cur);
        }
    });
    std::size_t missed = 0, wide = 0, min_run_wide = 25;
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        missed += !contains[i];
        if (!(widths[i] < 1e-5)) {
            ++wide;
            min_run_wide = std::min(min_run_wide, run[i]);
        }
        worst = std::max(worst, widths[i]);
    }
    r.pass = missed == 0 && wide == 0;
    r.detail = std::to_string(n - missed) + "/" + std::to_string(n) + " intervals contain u, " + std::to_string(wide) +
               " wider than 1e-5, max width " + fmt("%.3g", worst);
    // parabolic branches contract polynomially: wide intervals come from long runs of 1s or 7s
    if (wide) r.detail += ", every wide one has a run of >= " + std::to_string(min_run_wide) + " parabolic entries";
    return r;
}

CriterionResult invariance(const VerifyOptions& opt) {
    CriterionResult r{5, "measure invariance (closed forms)", false, "", 0};
    double wf = 0, wh = 0, wg = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = case_rng(opt, 5, i);
        auto [a, b] = interval(rng, -30.0, 2.414);
        wf = std::max(wf, std::abs(mu_farey_preimage(a, b) - mu_farey(a, b)));
        auto [c, d] = interval(rng, -30.0, 2.414);
        auto [e, f] = interval(rng, 2.415, 40.0);
        Rect rect{c, d, e, f};
        wh = std::max(wh, std::abs(mu_hat_preimage(rect) - mu_hat(rect)));
        auto [g, h] = interval(rng, -30.0, 2.414);
        wg = std::max(wg, std::abs(mu_gauss_preimage(g, h) - mu_gauss(g, h)));
    }
    r.pass = wf < 1e-12 && wh < 1e-12 && wg < 1e-12;
    r.detail = "max |mu(T^-1 I) - mu(I)|: Farey " + fmt("%.2e", wf) + ", natural ext " + fmt("%.2e", wh) + ", Gauss " +
               fmt("%.2e", wg);
    return r;
}

CriterionResult structure(const VerifyOptions& opt) {
    CriterionResult r{6, "natural extension tiling and shift conjugacy", false, "", 0};
    CheckResult tf = check_fhat_tiling(), tg = check_ghat_tiling(12);
    const std::size_t n = 1000;
    std::size_t bad = count_failures(n, [&](std::size_t i) {
        auto rng = case_rng(opt, 6, i);
        PlanePoint p = section_point(rng);
        auto c = two_sided_code(p, 41);
        auto c1 = two_sided_code(fhat(p), 40);
        for (std::size_t k = 0; k < 40; ++k)
            if (c1.forward[k] != c.forward[k + 1]) return false;
        if (c1.backward[0] != c.forward[0]) return false;
        for (std::size_t k = 1; k < 40; ++k)
            if (c1.backward[k] != c.backward[k - 1]) return false;
        return true;
    });
    r.pass = tf.ok && tg.ok && bad == 0;
    r.detail = std::string("fhat tiling ") + (tf.ok ? "ok" : tf.detail) + ", Ghat tiling " + (tg.ok ? "ok" : tg.detail) +
               ", shift conjugacy " + std::to_string(n - bad) + "/" + std::to_string(n);
    return r;
}

// n_k(u) by plain iteration of F
long n_by_iteration(ProjPoint u, int k) {
    for (long n = 1; n < 100000; ++n) {
        u = farey(u);
        if (sector_in_domain(u) != k) return n;
    }
    return -1;
}

CriterionResult acceleration(const VerifyOptions& opt) {
    CriterionResult r{7, "Gauss acceleration and finite mass", false, "", 0};
    const std::size_t n = 10000;
    std::size_t bad = count_failures(n, [&](std::size_t i) {
        auto rng = case_rng(opt, 7, i);
        ProjPoint u = sample::direction(rng, 1 + static_cast<int>(rng() % 7));
        auto [g, gs] = gauss(u);
        ProjPoint x = u;
        const long steps = gs.plain() ? 1 : gs.n;
        for (long j = 0; j < steps; ++j) x = farey(x);
        return x == g && (gs.plain() || n_by_iteration(u, gs.k) == gs.n);
    });
    int endpoint_bad = 0;
    for (long m = 1; m <= 12; ++m) {
        const ProjPoint lo = gauss_sub_boundary1(m - 1), hi = gauss_sub_boundary1(m);
        const ProjPoint mid((lo.u() + hi.u()) / QSqrt2(2));
        endpoint_bad += n_by_iteration(hi, 1) != m || n_by_iteration(mid, 1) != m;
        if (m > 1) endpoint_bad += n_by_iteration(lo, 1) != m - 1;
        const ProjPoint lo7 = gauss_sub_boundary7(m), hi7 = gauss_sub_boundary7(m - 1);
        const ProjPoint mid7((lo7.u() + hi7.u()) / QSqrt2(2));
        endpoint_bad += n_by_iteration(hi7, 7) != m || n_by_iteration(mid7, 7) != m;
    }
    const double closed = gauss_total_mass(), quad = gauss_total_mass_quadrature();
    r.pass = bad == 0 && endpoint_bad == 0 && std::abs(closed - quad) < 1e-9;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " samples G = F^n, sub-sector endpoints " +
               (endpoint_bad ? "FAIL" : "ok") + " for n <= 12, mass " + fmt("%.12f", closed) + " vs quadrature " +
               fmt("%.12f", quad) + " (diff " + fmt("%.1e", std::abs(closed - quad)) + ")";
    return r;
}

CriterionResult geodesic(const VerifyOptions& opt) {
    CriterionResult r{8, "geodesic coding: normalized code = CF entries", false, "", 0};
    const std::size_t n = 500;
    std::vector<char> exact_ok(n), float_state(n);  // float: 1 agree, 0 disagree, 2 skipped
    parallel_for(n, [&](std::size_t i) {
        auto rng = case_rng(opt, 8, i);
        ProjPoint u = non_terminating_direction(rng);
        TeichCode t = teich_code(u, 30);
        exact_ok[i] = !t.cuspidal && normalize_code(t.c) == cf_expand(u, 30).entries;
        try {
            float_state[i] = float_geodesic_code(u, 30) == t.c ? 1 : 0;
        } catch (const TooCloseToVertex&) {
            float_state[i] = 2;
        }
    });
    std::size_t ebad = 0, fbad = 0, skipped = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ebad += !exact_ok[i];
        fbad += float_state[i] == 0;
        skipped += float_state[i] == 2;
    }
    r.pass = ebad == 0 && fbad == 0 && skipped * 10 < n;
    r.detail = std::to_string(n - ebad) + "/" + std::to_string(n) + " exact codes match, float tracer agrees on " +
               std::to_string(n - skipped - fbad) + "/" + std::to_string(n - skipped) + " (" + std::to_string(skipped) +
               " too close to a vertex)";
    return r;
}

CriterionResult section(const VerifyOptions& opt) {
    CriterionResult r{9, "cross-section return = fhat", false, "", 0};
    const std::size_t n = 1000;
    std::size_t bad = count_failures(n, [&](std::size_t i) {
        auto rng = case_rng(opt, 9, i);
        PlanePoint p = section_point(rng);
        return cross_section_return(p) == fhat(p);
    });
    r.pass = bad == 0;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " section points";
    return r;
}

CriterionResult statistics(const VerifyOptions& opt) {
    CriterionResult r{10, "Gauss orbit histogram vs invariant density", false, "", 0};
    auto rng = case_rng(opt, 10, 0);
    const double u0 = sample::direction(rng, 3).to_double();
    const long n = 1000000;
    Histogram h = birkhoff_histogram(OrbitMap::Gauss, u0, n, 10, opt.seed);
    double worst = 0;
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        worst = std::max(worst, std::abs(static_cast<double>(h.counts[i]) / n - h.expected[i]) / h.expected[i]);
    r.pass = worst < 0.05;
    r.detail = "10^6 steps, worst relative decile deviation " + fmt("%.4f", worst) + ", " + std::to_string(h.restarts) +
               " reseeds";
    return r;
}

}  // namespace

CriterionResult verify_criterion(int id, const VerifyOptions& opt) {
    using Fn = CriterionResult (*)(const VerifyOptions&);
    static const Fn table[kCriteria] = {relabeling, derivation,  itinerary, recognition, invariance,
                                        structure,  acceleration, geodesic,  section,     statistics};
    if (id < 1 || id > kCriteria) throw OutOfRange("criterion " + std::to_string(id));
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = table[id - 1](opt);
    } catch (const std::exception& e) {
        r.id = id;
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> verify_all(const VerifyOptions& opt) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriteria; ++id) out.push_back(verify_criterion(id, opt));
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << " (" << fmt("%.1f", r.seconds) << " s): " << r.detail;
    return os.str();
}

}  // namespace octa
