#pragma once

#include "selmer/curve.hpp"
#include "selmer/sunit.hpp"

#include <map>
#include <optional>
#include <string>

namespace selmer {

// Parse an element expression over a number field: integers, the generator
// label, + - * / ^ and parentheses, e.g. "(1+(2*z3+1)^3)/(2*z3+1)^3".
NfElem parse_element(const std::string& expr, const NfPtr& F);

struct PlaceSpec {
    bool real = false;
    Int s;
    std::optional<std::string> uniformizer;  // element expression over K
    int precision = 0;                       // 0: default
    std::vector<std::string> display_labels;
    std::vector<std::string> display_gens;   // expressions over the factor field
    struct LocalGen {
        std::string type;  // "branch_orbit" | "point"
        int orbit = -1;
        std::string x;
    };
    std::vector<LocalGen> generators;
};

struct KnownDivisorSpec {
    std::string label;
    std::string type;  // "branch_orbit" | "point" | "half_bitangent" | "point_diff"
    int orbit = -1;    // branch_orbit / half_bitangent index
    std::string x, y;  // point
    std::array<std::string, 2> p1{}, p2{};  // point_diff (x, y expressions over Q)
};

struct DescentConfig {
    std::string name;
    long q = 0;
    std::string phi;  // "one-minus-zeta" | "mult-2"
    NfPtr K;
    std::map<std::string, NfPtr> fields;

    // curve
    std::optional<SuperellipticModel> superelliptic;
    std::optional<QuarticModel> quartic;
    std::string zeta_p_expr;
    bool all_torsion_rational = false;

    std::vector<SuppliedFactor> etale_factors;

    std::vector<PlaceSpec> places;

    // class data
    std::vector<std::pair<std::string, std::string>> k_class_gens;  // label, expr over K
    std::vector<std::vector<std::pair<std::string, std::string>>> factor_class_gens;
    std::vector<std::string> trust_notes;

    std::vector<KnownDivisorSpec> known_divisors;

    long budget_x_search = 40;
    long budget_aux_primes = 48;
    int precision_override = 0;
    Int count_cap = 10000000;
    bool report_subfield_rank = false;
    long subfield_index = 1;
};

DescentConfig load_config(const std::string& path);
DescentConfig parse_config_text(const std::string& text);

}  // namespace selmer
