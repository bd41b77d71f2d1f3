#pragma once

#include "selmer/config.hpp"
#include "selmer/etale.hpp"

#include "json.hpp"

namespace selmer {

// Per-place artifacts of the local step.
struct PlaceReport {
    std::string label;
    bool real = false;
    int target_dim = 0;
    int achieved_dim = 0;
    std::vector<std::string> basis_labels;                 // local class coordinates
    std::vector<std::string> generator_labels;             // chosen local generators
    std::vector<std::vector<int>> generator_images;        // their class vectors
    std::vector<std::vector<int>> beta;                    // ambient gen -> local class
};

struct RankStatement {
    bool exact = false;
    long value = 0;  // exact case
    long lower = 0, upper = 0;
    std::string obstruction;  // note about the unresolved part (if interval)
};

struct DescentResult {
    std::string name;
    long q = 0;
    long genus = 0;
    std::vector<std::string> ambient_labels;
    std::vector<std::vector<int>> h1_basis;
    int h1_dim = 0;
    std::vector<PlaceReport> places;
    std::vector<std::vector<int>> selmer_basis;
    int selmer_dim = 0;
    int torsion_phi_dim = 0;
    std::vector<std::pair<std::string, std::vector<int>>> known_images;
    int known_dim = 0;
    RankStatement rank;          // over K
    std::optional<RankStatement> subfield_rank;  // over the subfield (Stoll)
    std::vector<std::string> trust_ledger;
    std::vector<std::string> decisions;  // per-run search/choice log
    std::string assumption1;
    std::string assumption2;
};

// The descent driver: Steps 4-7 with the global images computed up front.
// step_from/step_to restrict the pipeline (4 = S and class data, 5 = the
// norm kernel, 6 = local images, 7 = intersection and ranks).
DescentResult run_descent(const DescentConfig& cfg, int step_from = 4, int step_to = 7);

// Serialized forms. The machine format is canonical: identical configs give
// byte-identical output (timing never enters it).
nlohmann::json report_to_json(const DescentResult& r);
std::string report_human(const DescentResult& r, double seconds);

}  // namespace selmer
