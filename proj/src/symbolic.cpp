#include "octa/symbolic.hpp"

#include "octa/cfmaps.hpp"
#include "octa/errors.hpp"
#include "octa/surface.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace octa {

namespace {
// pi_k as images of A, B, C, D
constexpr const char* kPerm[8] = {"ABCD", "DCBA", "BCDA", "CBAD", "CDAB", "BADC", "DABC", "ADCB"};
constexpr const char* kLetters = "ABCD";
}  // namespace

int letter_index(char c) {
    if (c < 'A' || c > 'D') throw ParseError(std::string("not a letter: '") + c + "'");
    return c - 'A';
}

char permute_letter(int k, char c) {
    if (k < 0 || k > 7) throw OutOfRange("permutation index " + std::to_string(k));
    return kPerm[k][letter_index(c)];
}

std::string permute(const std::string& w, int k) {
    std::string out(w);
    for (char& c : out) c = permute_letter(k, c);
    return out;
}

Word derive(const Word& w) {
    Word r;
    r.cut_front = w.cut_front + (w.s.empty() ? 0 : 1);
    r.cut_back = w.cut_back + (w.s.size() >= 2 ? 1 : 0);
    for (std::size_t i = 1; i + 1 < w.s.size(); ++i)
        if (w.s[i - 1] == w.s[i + 1]) r.s.push_back(w.s[i]);
    return r;
}

int TransitionDiagram::edge_count() const {
    int n = 0;
    for (const auto& row : edge)
        for (bool b : row) n += b;
    return n;
}

std::array<TransitionDiagram, 8> transport(const TransitionDiagram& d0) {
    std::array<TransitionDiagram, 8> out;
    for (int k = 0; k < 8; ++k) {
        out[k].index = k;
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y)
                out[k].edge[x][y] = d0.edge[letter_index(kPerm[k][x])][letter_index(kPerm[k][y])];
    }
    return out;
}

namespace {

// x in [0,1): dyadic plus a small irrational part
QSqrt2 rand_unit(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> big(0, (1L << 40) - 1), small(0, 999);
    QSqrt2 x(mpq_class(big(rng), 1L << 40), mpq_class(small(rng), 1L << 52));
    return x;
}

void record(TransitionDiagram& d, const std::string& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) d.edge[letter_index(w[i])][letter_index(w[i + 1])] = true;
}

// random interior point of the octagon
Vec2 rand_interior(std::mt19937_64& rng) {
    for (;;) {
        QSqrt2 x = QSqrt2(-3) + QSqrt2(6) * rand_unit(rng);
        QSqrt2 y = QSqrt2(-3) + QSqrt2(6) * rand_unit(rng);
        Vec2 p{x, y};
        if (octagon::contains(p) && octagon::boundary_side(p) < 0) return p;
    }
}

}  // namespace

TransitionDiagram infer_diagram0(const InferOptions& opt) {
    TransitionDiagram d;
    std::mt19937_64 rng(opt.seed);
    const QSqrt2 tmax = QSqrt2(-1, 1);  // tan(pi/8)
    auto run = [&](const QSqrt2& t) {
        Trajectory tau = make_trajectory(rand_interior(rng), {QSqrt2(1), t});
        try {
            record(d, trace(tau, opt.letters).letters);
        } catch (const SingularHit&) {
        }
    };
    for (std::size_t i = 0; i < opt.samples; ++i) run(tmax * rand_unit(rng));
    // near both sector boundaries, and on them
    for (int e = 1; e <= 12; ++e) {
        QSqrt2 eps(mpq_class(1, 1L << (3 * e)));
        run(eps);
        run(tmax - eps);
        run(tmax * (QSqrt2(1) - eps * rand_unit(rng)));
    }
    run(QSqrt2(0));
    run(tmax);
    return d;
}

std::array<TransitionDiagram, 8> infer_diagrams(const InferOptions& opt) { return transport(infer_diagram0(opt)); }

std::string diagrams_to_json(const std::array<TransitionDiagram, 8>& ds) {
    nlohmann::ordered_json j;
    j["diagrams"] = nlohmann::ordered_json::array();
    for (const auto& d : ds) {
        nlohmann::ordered_json e;
        e["index"] = d.index;
        nlohmann::ordered_json adj;
        for (int x = 0; x < 4; ++x) {
            std::vector<std::string> ys;
            for (int y = 0; y < 4; ++y)
                if (d.edge[x][y]) ys.emplace_back(1, kLetters[y]);
            adj[std::string(1, kLetters[x])] = ys;
        }
        e["edges"] = adj;
        j["diagrams"].push_back(e);
    }
    return j.dump(2) + "\n";
}

std::array<TransitionDiagram, 8> diagrams_from_json(const std::string& text) {
    std::array<TransitionDiagram, 8> out;
    try {
        auto j = nlohmann::json::parse(text);
        const auto& arr = j.at("diagrams");
        if (arr.size() != 8) throw ParseError("expected 8 diagrams");
        for (const auto& e : arr) {
            int i = e.at("index").get<int>();
            if (i < 0 || i > 7) throw ParseError("diagram index out of range");
            out[i].index = i;
            for (const auto& [x, ys] : e.at("edges").items()) {
                if (x.size() != 1) throw ParseError("bad vertex " + x);
                for (const auto& y : ys) {
                    std::string s = y.get<std::string>();
                    if (s.size() != 1) throw ParseError("bad vertex " + s);
                    out[i].edge[letter_index(x[0])][letter_index(s[0])] = true;
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("diagram json: ") + e.what());
    }
    return out;
}

std::string golden_diagrams_path() {
    const char* env = std::getenv("OCTA_DATA_DIR");
    std::string dir = env && *env ? env : OCTA_DATA_DIR;
    return dir + "/diagrams.json";
}

const std::array<TransitionDiagram, 8>& diagrams() {
    static const std::array<TransitionDiagram, 8> ds = [] {
        std::ifstream in(golden_diagrams_path());
        if (!in) return infer_diagrams();
        std::stringstream ss;
        ss << in.rdbuf();
        return diagrams_from_json(ss.str());
    }();
    return ds;
}

bool is_admissible(const std::string& w, int i) {
    if (i < 0 || i > 7) throw OutOfRange("diagram index " + std::to_string(i));
    const auto& d = diagrams()[i];
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
        if (!d.has(w[k], w[k + 1])) return false;
    return true;
}

unsigned admissible_mask(const std::string& w) {
    const auto& ds = diagrams();
    unsigned mask = 0xff;
    for (std::size_t k = 0; k + 1 < w.size() && mask; ++k) {
        const int x = letter_index(w[k]), y = letter_index(w[k + 1]);
        for (int i = 0; i < 8; ++i)
            if (!ds[i].edge[x][y]) mask &= ~(1u << i);
    }
    return mask;
}

std::vector<int> admissible_diagrams(const std::string& w) {
    std::vector<int> out;
    unsigned m = admissible_mask(w);
    for (int i = 0; i < 8; ++i)
        if (m & (1u << i)) out.push_back(i);
    return out;
}

std::pair<std::string, int> normal_form(const std::string& w) {
    auto ad = admissible_diagrams(w);
    if (ad.empty()) throw NotAdmissible("word is admissible in no diagram");
    if (ad.size() > 1) throw AmbiguousDiagram("word is admissible in " + std::to_string(ad.size()) + " diagrams");
    return {permute(w, ad[0]), ad[0]};
}

const char* to_string(RenormStop s) {
    switch (s) {
        case RenormStop::MaxSteps: return "max-steps";
        case RenormStop::Exhausted: return "exhausted";
        case RenormStop::Ambiguous: return "ambiguous";
        case RenormStop::NotAdmissible: return "not-admissible";
    }
    return "?";
}

RenormTrace renormalize(const Word& w, std::size_t max_steps) {
    RenormTrace tr;
    Word cur = w;
    for (std::size_t k = 0;; ++k) {
        if (k == max_steps) {
            tr.stop = RenormStop::MaxSteps;
            break;
        }
        if (cur.s.size() < 2) {
            tr.stop = RenormStop::Exhausted;
            break;
        }
        unsigned m = admissible_mask(cur.s);
        if (m == 0) {
            tr.stop = RenormStop::NotAdmissible;
            break;
        }
        if (m & (m - 1)) {
            tr.stop = RenormStop::Ambiguous;
            break;
        }
        int j = __builtin_ctz(m);
        tr.d.push_back(j);
        tr.words.push_back(cur);
        Word n = cur;
        n.s = permute(cur.s, j);
        cur = derive(n);
    }
    return tr;
}

StagedRenorm renormalize_staged(const Trajectory& tau, std::size_t steps, const StagedOptions& opt) {
    StagedRenorm out;
    Trajectory cur = tau;
    std::size_t letters = opt.letters;
    while (out.d.size() < steps) {
        CuttingSeq seq = trace(cur, letters, true);
        RenormTrace tr = renormalize(Word{seq.letters}, steps - out.d.size());
        const std::size_t m = tr.d.size();
        if (m == 0 || (tr.stop == RenormStop::Ambiguous && m < 2)) {
            // too short to decide the next diagram: trace further from the same trajectory
            if (tr.stop == RenormStop::NotAdmissible || letters >= opt.max_letters) {
                out.stop = tr.stop;
                break;
            }
            letters *= 4;
            continue;
        }
        ++out.stages;
        out.d.insert(out.d.end(), tr.d.begin(), tr.d.end());
        if (out.d.size() >= steps) break;
        // derived word after the m steps, checked against the reseeded trajectory
        Word last = tr.words.back();
        last.s = permute(last.s, tr.d.back());
        const std::string next = derive(last).s;
        cur = renormalize_trajectory(cur, m).tau;
        const std::string fresh = trace_time(cur, seq.exact_times.back()).letters;
        if (fresh.find(next) == std::string::npos) {
            out.reseed_ok = false;
            out.stop = RenormStop::NotAdmissible;
            break;
        }
        letters = opt.letters;
    }
    return out;
}

bool DirectionInterval::contains(const ProjPoint& u) const {
    if (u.is_inf()) return lo.inf != 0 || hi.inf != 0;
    XReal x{0, u.u()};
    return lo <= x && x <= hi;
}

DirectionInterval nested_interval(const std::vector<int>& d, std::size_t m) {
    if (m >= d.size()) throw OutOfRange("nested_interval: level beyond the available entries");
    Mat2 M;
    for (std::size_t i = 0; i < m; ++i) M = M * farey_branch_inv(d[i]);
    const auto& c = sector_boundaries();
    const int inf_sign = d[0] == 0 ? 1 : -1;
    XReal a = to_xreal(M.apply_left(c[d[m]]), inf_sign), b = to_xreal(M.apply_left(c[d[m] + 1]), inf_sign);
    if (!(a <= b)) std::swap(a, b);
    DirectionInterval I{a, b, 0.0};
    I.width = std::abs(a.angle() - b.angle());
    return I;
}

Recognition recognize_direction(const Word& w, std::size_t max_steps, std::size_t tail_threshold) {
    RenormTrace tr = renormalize(w, max_steps);
    return recognize_direction(tr.d, tr.stop, tail_threshold);
}

Recognition recognize_direction(const std::vector<int>& d, RenormStop stop, std::size_t tail_threshold) {
    Recognition r;
    r.d = d;
    r.stop = stop;
    for (std::size_t m = 0; m < r.d.size(); ++m) r.nested.push_back(nested_interval(r.d, m));
    if (!r.d.empty() && tail_threshold > 0) {
        int last = r.d.back();
        std::size_t run = 0;
        for (auto it = r.d.rbegin(); it != r.d.rend() && *it == last; ++it) ++run;
        r.terminating = (last == 1 || last == 7) && run >= tail_threshold;
    }
    return r;
}

}  // namespace octa
