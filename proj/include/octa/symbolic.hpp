#pragma once

#include "octa/projline.hpp"
#include "octa/surface.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace octa {

int letter_index(char c);  // A..D -> 0..3
char permute_letter(int k, char c);
std::string permute(const std::string& w, int k);

struct Word {
    std::string s;
    std::size_t cut_front = 0, cut_back = 0;
};
// letters with equal neighbours; the two ends of a finite word are cut
Word derive(const Word& w);
inline std::string derive(const std::string& w) { return derive(Word{w}).s; }

struct TransitionDiagram {
    int index = 0;
    std::array<std::array<bool, 4>, 4> edge{};  // edge[X][Y]: X followed by Y
    bool has(char x, char y) const { return edge[letter_index(x)][letter_index(y)]; }
    int edge_count() const;
};

// D_k from D_0: (X,Y) in D_k iff (pi_k X, pi_k Y) in D_0
std::array<TransitionDiagram, 8> transport(const TransitionDiagram& d0);

struct InferOptions {
    std::size_t samples = 600;
    std::size_t letters = 3000;
    std::uint64_t seed = 20240611;
};
// sample traced trajectories with direction in the closed sector 0
TransitionDiagram infer_diagram0(const InferOptions& opt = {});
std::array<TransitionDiagram, 8> infer_diagrams(const InferOptions& opt = {});

std::string diagrams_to_json(const std::array<TransitionDiagram, 8>& ds);
std::array<TransitionDiagram, 8> diagrams_from_json(const std::string& text);
// golden diagrams (data/diagrams.json; OCTA_DATA_DIR env overrides the location)
const std::array<TransitionDiagram, 8>& diagrams();
std::string golden_diagrams_path();

bool is_admissible(const std::string& w, int i);
// bit i set when admissible in diagram i
unsigned admissible_mask(const std::string& w);
std::vector<int> admissible_diagrams(const std::string& w);

// (pi_j w, j) for the unique diagram j; throws AmbiguousDiagram / NotAdmissible
std::pair<std::string, int> normal_form(const std::string& w);

enum class RenormStop { MaxSteps, Exhausted, Ambiguous, NotAdmissible };
const char* to_string(RenormStop s);

struct RenormTrace {
    std::vector<int> d;           // diagram indices d_0, d_1, ...
    std::vector<Word> words;      // w_0, w_1, ... (w_k admissible in d_k)
    RenormStop stop = RenormStop::MaxSteps;
};
RenormTrace renormalize(const Word& w, std::size_t max_steps);

// Renormalizes c(tau) in stages: a traced word is renormalized until it stops, then tracing
// resumes from the renormalized trajectory. Each reseed is checked: the last derived word
// must occur in the new traced word over the same time window.
struct StagedOptions {
    std::size_t letters = 400;    // letters traced per stage
    std::size_t max_letters = 200000;
};
struct StagedRenorm {
    std::vector<int> d;
    std::size_t stages = 0;
    bool reseed_ok = true;        // every reseed check passed
    RenormStop stop = RenormStop::MaxSteps;
};
StagedRenorm renormalize_staged(const Trajectory& tau, std::size_t steps, const StagedOptions& opt = {});

struct DirectionInterval {
    XReal lo, hi;        // in u-coordinates
    double width = 0;    // angle width
    bool contains(const ProjPoint& u) const;
};

struct Recognition {
    std::vector<int> d;
    std::vector<DirectionInterval> nested;  // nested[m] from d_0..d_m
    RenormStop stop = RenormStop::MaxSteps;
    bool terminating = false;               // trailing run of 1s or 7s at least the threshold
};
// nested intervals F_{d0}^-1 ... F_{d_{m-1}}^-1 [closed sector d_m]
DirectionInterval nested_interval(const std::vector<int>& d, std::size_t m);
Recognition recognize_direction(const Word& w, std::size_t max_steps, std::size_t tail_threshold = 20);
Recognition recognize_direction(const std::vector<int>& d, RenormStop stop, std::size_t tail_threshold = 20);

}  // namespace octa
