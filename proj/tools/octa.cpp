#include "CLI11.hpp"
#include "json.hpp"

#include "octa/cfmaps.hpp"
#include "octa/errors.hpp"
#include "octa/natext.hpp"
#include "octa/sampling.hpp"
#include "octa/surface.hpp"
#include "octa/symbolic.hpp"
#include "octa/teich.hpp"
#include "octa/verify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

using namespace octa;
using json = nlohmann::ordered_json;

namespace {

// exit codes
constexpr int kOk = 0, kFailed = 1, kUsage = 2, kComputation = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string out;
    std::uint64_t seed = 20240611;
};

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + c.out);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void add_common(CLI::App* sub, Common& c, bool seeded = false) {
    sub->add_option("--out", c.out, "write output to this file instead of stdout");
    if (seeded) sub->add_option("--seed", c.seed, "random seed");
}

// --u takes an exact expression over Q(sqrt2); --angle a float angle in [0, pi), inexact
struct DirectionArgs {
    std::string u;
    std::optional<double> angle;
    void add(CLI::App* sub, const std::string& flag = "--u") {
        sub->add_option(flag, u, "direction u = dx/dy, e.g. \"3/2+1*sqrt2\" or \"inf\"");
        sub->add_option("--angle", angle, "direction angle in radians (inexact)");
    }
    bool given() const { return !u.empty() || angle.has_value(); }
    bool exact() const { return !angle.has_value(); }
    ProjPoint get() const {
        if (!u.empty() && angle) throw UsageError("give either an exact direction or --angle, not both");
        if (angle) {
            const double th = *angle;
            if (!(th >= 0 && th < std::numbers::pi)) throw UsageError("--angle must lie in [0, pi)");
            if (th == 0) return ProjPoint::infinity();
            // the binary value of cot(theta), as a rational
            return ProjPoint(QSqrt2(mpq_class(1.0 / std::tan(th))));
        }
        if (u.empty()) throw UsageError("a direction is required");
        return ProjPoint::parse(u);
    }
};

struct TrajectoryArgs {
    std::string point = "0,0";
    DirectionArgs dir;
    std::size_t n = 0;
    std::string time;
    void add(CLI::App* sub) {
        sub->add_option("--point", point, "start point \"x,y\" in the octagon (exact)");
        dir.add(sub);
        sub->add_option("--n", n, "number of letters");
        sub->add_option("--time", time, "trace up to this time instead (exact)");
    }
    Trajectory get() const { return make_trajectory(parse_vec2(point), forward_vector(dir.get())); }
    CuttingSeq trace_it(bool exact_points = false) const {
        const Trajectory tau = get();
        if (!time.empty()) return trace_time(tau, QSqrt2::parse(time), exact_points);
        if (n == 0) throw UsageError("give --n or --time");
        return trace(tau, n, exact_points);
    }
};

json interval_json(const DirectionInterval& I) {
    return {{"lo", I.lo.str()}, {"hi", I.hi.str()}, {"width", I.width}};
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

XReal xr(const QSqrt2& v) { return {0, v}; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"octa: renormalization tools for the regular octagon surface"};
    app.require_subcommand(1);
    int status = kOk;

    // trace
    Common trace_c;
    TrajectoryArgs trace_t;
    bool trace_svg = false;
    auto* trace_cmd = app.add_subcommand("trace", "cutting sequence of a trajectory");
    add_common(trace_cmd, trace_c);
    trace_t.add(trace_cmd);
    trace_cmd->add_flag("--svg", trace_svg, "emit an SVG of the trajectory instead of JSON");
    trace_cmd->callback([&] {
        CuttingSeq s = trace_t.trace_it(trace_svg);
        if (trace_svg) {
            emit(trace_c, surface_svg(trajectory_pieces(trace_t.get(), s), {}));
            return;
        }
        json j;
        j["point"] = trace_t.point;
        j["direction"] = trace_t.dir.get().str();
        j["exact"] = trace_t.dir.exact();
        j["letters"] = s.letters;
        j["sides"] = s.sides;
        j["times"] = s.times;
        emit(trace_c, dump(j));
    });

    // derive
    Common derive_c;
    TrajectoryArgs derive_t;
    std::string derive_word;
    auto* derive_cmd = app.add_subcommand("derive", "derived sequence of a word or of a traced trajectory");
    add_common(derive_cmd, derive_c);
    derive_cmd->add_option("--word", derive_word, "word over A..D");
    derive_t.add(derive_cmd);
    derive_cmd->callback([&] {
        const std::string w = derive_word.empty() ? derive_t.trace_it().letters : derive_word;
        Word d = derive(Word{w});
        json j{{"word", w}, {"derived", d.s}, {"cut_front", d.cut_front}, {"cut_back", d.cut_back}};
        emit(derive_c, dump(j));
    });

    // renormalize
    Common ren_c;
    TrajectoryArgs ren_t;
    std::string ren_word;
    std::size_t ren_steps = 10;
    bool ren_staged = false;
    auto* ren_cmd = app.add_subcommand("renormalize", "diagram indices by repeated normalization and derivation");
    add_common(ren_cmd, ren_c);
    ren_cmd->add_option("--word", ren_word, "word over A..D");
    ren_t.add(ren_cmd);
    ren_cmd->add_option("--steps", ren_steps, "maximum number of steps");
    ren_cmd->add_flag("--staged", ren_staged, "retrace the renormalized trajectory when the word runs out");
    ren_cmd->callback([&] {
        json j;
        if (ren_staged) {
            if (!ren_word.empty()) throw UsageError("--staged needs a trajectory, not --word");
            StagedRenorm s = renormalize_staged(ren_t.get(), ren_steps);
            j = {{"d", s.d}, {"stages", s.stages}, {"reseed_ok", s.reseed_ok}, {"stop", to_string(s.stop)}};
        } else {
            const std::string w = ren_word.empty() ? ren_t.trace_it().letters : ren_word;
            RenormTrace r = renormalize(Word{w}, ren_steps);
            json words = json::array();
            for (const auto& x : r.words) words.push_back(x.s);
            j = {{"d", r.d}, {"words", words}, {"stop", to_string(r.stop)}};
        }
        emit(ren_c, dump(j));
    });

    // expand
    Common exp_c;
    DirectionArgs exp_u;
    std::size_t exp_len = 10;
    auto* exp_cmd = app.add_subcommand("expand", "Farey continued fraction entries");
    add_common(exp_cmd, exp_c);
    exp_u.add(exp_cmd);
    exp_cmd->add_option("--len", exp_len, "number of entries");
    exp_cmd->callback([&] {
        CFExpansion e = cf_expand(exp_u.get(), exp_len);
        if (e.status != CFStatus::Generic) std::cerr << "note: " << to_string(e.status) << " expansion\n";
        emit(exp_c, json(e.entries).dump() + "\n");
    });

    // recognize
    Common rec_c;
    TrajectoryArgs rec_t;
    std::string rec_word;
    std::size_t rec_steps = 25;
    auto* rec_cmd = app.add_subcommand("recognize", "direction interval from a word or a trajectory");
    add_common(rec_cmd, rec_c);
    rec_cmd->add_option("--word", rec_word, "word over A..D");
    rec_t.add(rec_cmd);
    rec_cmd->add_option("--steps", rec_steps, "number of entries to recognize");
    rec_cmd->callback([&] {
        Recognition r;
        json j;
        if (!rec_word.empty()) {
            r = recognize_direction(Word{rec_word}, rec_steps);
        } else {
            StagedRenorm s = renormalize_staged(rec_t.get(), rec_steps);
            r = recognize_direction(s.d, s.stop);
        }
        j["d"] = r.d;
        j["stop"] = to_string(r.stop);
        j["terminating"] = r.terminating;
        json nested = json::array();
        for (const auto& I : r.nested) nested.push_back(interval_json(I));
        j["intervals"] = nested;
        if (rec_word.empty() && !r.nested.empty()) j["contains_u"] = r.nested.back().contains(rec_t.dir.get());
        emit(rec_c, dump(j));
    });

    // gauss
    Common g_c;
    DirectionArgs g_u;
    std::size_t g_n = 10;
    auto* g_cmd = app.add_subcommand("gauss", "exact Gauss map orbit");
    add_common(g_cmd, g_c);
    g_u.add(g_cmd);
    g_cmd->add_option("--n", g_n, "number of steps");
    g_cmd->callback([&] {
        ProjPoint u = g_u.get();
        json orbit = json::array();
        for (std::size_t k = 0; k < g_n; ++k) {
            if (!in_domain(u)) throw OutOfDomain("gauss: " + u.str() + " outside [pi/8, pi]");
            auto [g, gs] = gauss(u);
            orbit.push_back({{"u", u.str()}, {"k", gs.k}, {"n", gs.n}});
            u = g;
        }
        emit(g_c, dump({{"orbit", orbit}, {"last", u.str()}}));
    });

    // nat-ext
    Common ne_c;
    DirectionArgs ne_u, ne_v;
    std::size_t ne_n = 10;
    std::string ne_map = "farey";
    auto* ne_cmd = app.add_subcommand("nat-ext", "natural extension orbit and two-sided coding");
    add_common(ne_cmd, ne_c);
    ne_cmd->add_option("--u", ne_u.u, "u coordinate (exact)");
    ne_cmd->add_option("--v", ne_v.u, "v coordinate (exact)");
    ne_cmd->add_option("--n", ne_n, "number of steps");
    ne_cmd->add_option("--map", ne_map, "farey or gauss")->check(CLI::IsMember({"farey", "gauss"}));
    ne_cmd->callback([&] {
        PlanePoint p{ne_u.get(), ne_v.get()};
        json orbit = json::array();
        const PlanePoint start = p;
        for (std::size_t k = 0; k < ne_n; ++k) {
            orbit.push_back({{"u", p.u.str()}, {"v", p.v.str()}});
            p = ne_map == "farey" ? fhat(p) : ghat(p);
        }
        json j{{"map", ne_map}, {"orbit", orbit}};
        if (ne_map == "farey") {
            TwoSidedCode c = two_sided_code(start, ne_n);
            j["coding"] = {{"forward", c.forward}, {"backward", c.backward}, {"boundary", c.boundary}};
        }
        emit(ne_c, dump(j));
    });

    // measure-check
    Common mc_c;
    std::string mc_map = "farey";
    std::size_t mc_trials = 100;
    auto* mc_cmd = app.add_subcommand("measure-check", "invariance of the closed-form measures on random sets");
    add_common(mc_cmd, mc_c, true);
    mc_cmd->add_option("--map", mc_map, "farey, nat-ext or gauss")->check(CLI::IsMember({"farey", "nat-ext", "gauss"}));
    mc_cmd->add_option("--trials", mc_trials, "number of random sets");
    mc_cmd->callback([&] {
        sample::Rng rng(mc_c.seed);
        std::ostringstream os;
        os << "trial,set,mu,mu_preimage,abs_delta,max_abs_delta\n";
        double worst = 0;
        auto iv = [&](double lo, double hi) {
            QSqrt2 a = sample::generic(rng, lo, hi), b = sample::generic(rng, lo, hi);
            if (b < a) std::swap(a, b);
            return std::pair{xr(a), xr(b)};
        };
        for (std::size_t t = 0; t < mc_trials; ++t) {
            double mu = 0, pre = 0;
            std::string set;
            if (mc_map == "nat-ext") {
                auto [a, b] = iv(-30.0, 2.414);
                auto [c, d] = iv(2.415, 40.0);
                Rect r{a, b, c, d};
                mu = mu_hat(r);
                pre = mu_hat_preimage(r);
                set = "[" + a.str() + " " + b.str() + "]x[" + c.str() + " " + d.str() + "]";
            } else {
                auto [a, b] = iv(-30.0, 2.414);
                mu = mc_map == "farey" ? mu_farey(a, b) : mu_gauss(a, b);
                pre = mc_map == "farey" ? mu_farey_preimage(a, b) : mu_gauss_preimage(a, b);
                set = "[" + a.str() + " " + b.str() + "]";
            }
            const double d = std::abs(pre - mu);
            worst = std::max(worst, d);
            os << t << "," << set << "," << fmt(mu) << "," << fmt(pre) << "," << fmt(d) << "," << fmt(worst) << "\n";
        }
        emit(mc_c, os.str());
        if (!(worst < 1e-12)) {
            std::cerr << "measure-check: max |delta| " << worst << " >= 1e-12\n";
            status = kFailed;
        }
    });

    // gauss-hist
    Common gh_c;
    long gh_n = 1000000;
    int gh_bins = 10;
    std::string gh_map = "gauss";
    auto* gh_cmd = app.add_subcommand("gauss-hist", "orbit histogram against the invariant density");
    add_common(gh_cmd, gh_c, true);
    gh_cmd->add_option("--n", gh_n, "orbit length");
    gh_cmd->add_option("--bins", gh_bins, "number of bins (gauss)")->check(CLI::Range(1, 100000));
    gh_cmd->add_option("--map", gh_map, "gauss or farey")->check(CLI::IsMember({"gauss", "farey"}));
    gh_cmd->callback([&] {
        sample::Rng rng(gh_c.seed);
        const double u0 = sample::direction(rng, 3).to_double();
        const bool g = gh_map == "gauss";
        Histogram h = birkhoff_histogram(g ? OrbitMap::Gauss : OrbitMap::Farey, u0, gh_n, gh_bins, gh_c.seed);
        const double mass = gauss_total_mass();
        std::ostringstream os;
        os << "bin,lo,hi,count,fraction,expected,empirical_density,density\n";
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            const double lo = h.edges[i], hi = h.edges[i + 1];
            const double frac = static_cast<double>(h.counts[i]) / static_cast<double>(h.n);
            os << i << "," << fmt(lo) << "," << fmt(hi) << "," << h.counts[i] << "," << fmt(frac) << ",";
            if (i < h.expected.size()) os << fmt(h.expected[i]);
            os << ",";
            // density curve at the bin midpoint; the unbounded bin has none
            if (g && std::isfinite(lo) && std::isfinite(hi))
                os << fmt(frac / (hi - lo)) << "," << fmt(gauss_density(0.5 * (lo + hi)) / mass);
            else
                os << ",";
            os << "\n";
        }
        emit(gh_c, os.str());
        if (h.restarts) std::cerr << "note: " << h.restarts << " reseeds\n";
    });

    // geodesic-code
    Common gc_c;
    DirectionArgs gc_u;
    std::size_t gc_len = 20;
    bool gc_norm = false, gc_two = false;
    std::string gc_oracle = "exact";
    double gc_tol = 1e-9;
    auto* gc_cmd = app.add_subcommand("geodesic-code", "cutting sequence of the hyperbolic geodesic ray");
    add_common(gc_cmd, gc_c);
    gc_u.add(gc_cmd, "--theta");
    gc_cmd->add_option("--len", gc_len, "number of symbols");
    gc_cmd->add_flag("--normalized", gc_norm, "apply the normalization to continued fraction entries");
    gc_cmd->add_option("--oracle", gc_oracle, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    gc_cmd->add_option("--tol", gc_tol, "vertex clearance for the float tracer");
    gc_cmd->add_flag("--two-paths", gc_two, "for a cusp, both continuations");
    gc_cmd->callback([&] {
        const ProjPoint u = gc_u.get();
        auto out = [&](const std::vector<int>& c) { return gc_norm ? normalize_code(c) : c; };
        json j{{"theta", u.str()}, {"exact", gc_u.exact()}, {"oracle", gc_oracle}};
        if (gc_two) {
            auto [a, b] = teich_code_two_paths(u, gc_len);
            j["paths"] = {out(a.c), out(b.c)};
        } else if (gc_oracle == "float") {
            j["code"] = out(float_geodesic_code(u, gc_len, gc_tol));
        } else {
            TeichCode t = teich_code(u, gc_len);
            j["code"] = out(t.c);
            j["cuspidal"] = t.cuspidal;
        }
        emit(gc_c, dump(j));
    });

    // graph
    Common gr_c;
    std::string gr_map = "farey";
    int gr_samples = 6000;
    auto* gr_cmd = app.add_subcommand("graph", "SVG graph of the Farey or Gauss map in angle coordinates");
    add_common(gr_cmd, gr_c);
    gr_cmd->add_option("--map", gr_map, "farey or gauss")->check(CLI::IsMember({"farey", "gauss"}));
    gr_cmd->add_option("--samples", gr_samples, "sample count")->check(CLI::Range(10, 10000000));
    gr_cmd->callback([&] { emit(gr_c, map_graph_svg(gr_map == "gauss", gr_samples)); });

    // tessellation-svg
    Common ts_c;
    int ts_depth = 3;
    auto* ts_cmd = app.add_subcommand("tessellation-svg", "the octagon tessellation of the disk");
    add_common(ts_cmd, ts_c);
    ts_cmd->add_option("--depth", ts_depth, "tree depth 0..6");
    ts_cmd->callback([&] {
        if (ts_depth < 0 || ts_depth > 6) throw UsageError("--depth must be in 0..6");
        emit(ts_c, tessellation_svg(ts_depth));
    });

    // verify-all
    Common va_c;
    std::vector<int> va_only;
    auto* va_cmd = app.add_subcommand("verify-all", "run the acceptance criteria");
    add_common(va_cmd, va_c, true);
    va_cmd->add_option("--only", va_only, "criterion ids")->check(CLI::Range(1, kCriteria));
    va_cmd->callback([&] {
        VerifyOptions opt;
        opt.seed = va_c.seed;
        if (va_only.empty())
            for (int i = 1; i <= kCriteria; ++i) va_only.push_back(i);
        std::ostringstream os;
        int passed = 0;
        for (int id : va_only) {
            CriterionResult r = verify_criterion(id, opt);
            passed += r.pass;
            os << format_result(r) << "\n";
            if (va_c.out.empty()) std::cout << format_result(r) << std::endl;
        }
        const std::string summary =
            std::to_string(passed) + "/" + std::to_string(va_only.size()) + " criteria passed\n";
        os << summary;
        if (va_c.out.empty())
            std::cout << summary;
        else
            emit(va_c, os.str());
        if (passed != static_cast<int>(va_only.size())) status = kFailed;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kComputation;
    }
    return status;
}
