#include "selmer/config.hpp"

#include "json.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace selmer {

using nlohmann::json;

namespace {

struct ExprParser {
    const std::string& s;
    size_t pos = 0;
    const NfPtr& F;

    ExprParser(const std::string& str, const NfPtr& field) : s(str), F(field) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw ConfigError("element expression error at position " + std::to_string(pos) + " in '" +
                          s + "': " + why);
    }

    NfElem parse() {
        NfElem v = expr();
        skip();
        if (pos != s.size()) fail("trailing input");
        return v;
    }
    NfElem expr() {
        NfElem v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    NfElem term() {
        NfElem v = factor();
        for (;;) {
            if (eat('*')) v = v * factor();
            else if (eat('/')) v = v / factor();
            else return v;
        }
    }
    NfElem factor() {
        skip();
        bool neg = false;
        while (eat('-')) neg = !neg;
        NfElem v = base();
        skip();
        if (eat('^')) {
            skip();
            bool eneg = eat('-');
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) fail("exponent expected");
            long e = std::stol(s.substr(start, pos - start));
            v = v.pow(eneg ? -e : e);
        }
        return neg ? -v : v;
    }
    NfElem base() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        if (s[pos] == '(') {
            ++pos;
            NfElem v = expr();
            if (!eat(')')) fail("missing )");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return NfElem::from_rat(F, Rat(Int(s.substr(start, pos - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(s[pos]))) {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string id = s.substr(start, pos - start);
            if (id != F->label()) fail("unknown symbol '" + id + "' (generator is '" +
                                       F->label() + "')");
            return NfElem::gen(F);
        }
        fail("unexpected character");
    }
};

QPoly json_poly(const json& arr) {
    std::vector<Rat> c;
    for (auto& v : arr) {
        if (v.is_number_integer()) c.emplace_back(static_cast<long>(v.get<long long>()));
        else c.emplace_back(Int(v.get<std::string>()));
    }
    return QPoly(std::move(c));
}

}  // namespace

NfElem parse_element(const std::string& expr, const NfPtr& F) {
    ExprParser p(expr, F);
    return p.parse();
}

DescentConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    DescentConfig cfg;
    try {
        cfg.name = j.at("name").get<std::string>();
        cfg.q = j.at("q").get<long>();
        cfg.phi = j.at("phi").get<std::string>();
        if (cfg.phi != "one-minus-zeta" && cfg.phi != "mult-2")
            throw ConfigError("unsupported isogeny descriptor '" + cfg.phi +
                              "' (supported: one-minus-zeta, mult-2)");
        // fields
        for (auto& [fname, fj] : j.at("fields").items()) {
            NfPtr F = NumberField::make(fj.at("label").get<std::string>(),
                                        json_poly(fj.at("poly")));
            cfg.fields[fname] = F;
        }
        if (!cfg.fields.count("K")) throw ConfigError("fields must define K");
        cfg.K = cfg.fields["K"];

        // curve
        auto& cj = j.at("curve");
        std::string type = cj.at("type").get<std::string>();
        if (type == "superelliptic") {
            long p = cj.at("p").get<long>();
            std::vector<NfElem> coeffs;
            for (auto& e : cj.at("f")) coeffs.push_back(parse_element(e.get<std::string>(), cfg.K));
            cfg.superelliptic = make_superelliptic(cfg.K, p, NfPoly(std::move(coeffs)));
            cfg.zeta_p_expr = j.at("zeta_p").get<std::string>();
        } else if (type == "plane_quartic") {
            std::vector<std::vector<NfElem>> co(
                5, std::vector<NfElem>(5, NfElem::from_rat(cfg.K, Rat(0))));
            for (auto& entry : cj.at("coeffs")) {
                int i = entry.at(0).get<int>(), jj = entry.at(1).get<int>();
                co[i][jj] = parse_element(entry.at(2).get<std::string>(), cfg.K);
            }
            LinearForm zline{"z", NfElem::from_rat(cfg.K, Rat(0)),
                             NfElem::from_rat(cfg.K, Rat(0)), NfElem::from_rat(cfg.K, Rat(1))};
            std::vector<LinearForm> bit;
            for (auto& b : cj.at("bitangents")) {
                bit.push_back({b.at("label").get<std::string>(),
                               parse_element(b.at("a").get<std::string>(), cfg.K),
                               parse_element(b.at("b").get<std::string>(), cfg.K),
                               parse_element(b.at("c").get<std::string>(), cfg.K)});
            }
            cfg.quartic = make_quartic(cfg.K, co, zline, bit);
            cfg.all_torsion_rational = j.value("all_torsion_rational", false);
            if (!cfg.all_torsion_rational)
                throw ConfigError(
                    "plane quartic mode requires all_torsion_rational: the identification of "
                    "the cohomology with (Q*/Q*2)^6 is only valid for rational 2-torsion");
        } else {
            throw ConfigError("unknown curve type " + type);
        }
        if (cfg.phi == "one-minus-zeta" && !cfg.superelliptic)
            throw ConfigError("one-minus-zeta descent needs a superelliptic model");
        if (cfg.phi == "mult-2" && cfg.superelliptic && cfg.q != 2)
            throw ConfigError("mult-2 on a superelliptic model needs q = 2");
        if (j.contains("tamagawa_ratio") || cfg.phi == "general")
            throw ConfigError("general isogenies with Tamagawa-ratio local sizes are not "
                              "implemented");

        // etale factors
        if (j.contains("etale")) {
            for (auto& f : j.at("etale").at("factors")) {
                NfPtr LF = cfg.fields.at(f.at("field").get<std::string>());
                SuppliedFactor sf;
                sf.field = LF;
                sf.base_gen_image = parse_element(f.at("k_image").get<std::string>(), LF);
                sf.root = parse_element(f.at("root").get<std::string>(), LF);
                sf.orbit_label = f.at("label").get<std::string>();
                cfg.etale_factors.push_back(std::move(sf));
            }
        }

        // places
        for (auto& pj : j.at("places")) {
            PlaceSpec ps;
            if (pj.at("s").is_string()) {
                std::string sv = pj.at("s").get<std::string>();
                if (sv != "real") throw ConfigError("place must be a prime or \"real\"");
                ps.real = true;
            } else {
                ps.s = Int(pj.at("s").get<long long>());
            }
            if (pj.contains("uniformizer"))
                ps.uniformizer = pj.at("uniformizer").get<std::string>();
            ps.precision = pj.value("precision", 0);
            if (pj.contains("display_basis")) {
                for (auto& d : pj.at("display_basis")) {
                    ps.display_labels.push_back(d.at(0).get<std::string>());
                    ps.display_gens.push_back(d.at(1).get<std::string>());
                }
            }
            if (pj.contains("generators")) {
                for (auto& g : pj.at("generators")) {
                    PlaceSpec::LocalGen lg;
                    lg.type = g.at("type").get<std::string>();
                    if (lg.type == "branch_orbit") lg.orbit = g.at("orbit").get<int>();
                    else if (lg.type == "point") lg.x = g.at("x").get<std::string>();
                    else throw ConfigError("unknown local generator type " + lg.type);
                    ps.generators.push_back(std::move(lg));
                }
            }
            cfg.places.push_back(std::move(ps));
        }

        // class data
        auto& cd = j.at("class_data");
        for (auto& g : cd.at("K").at("generators"))
            cfg.k_class_gens.emplace_back(g.at(0).get<std::string>(), g.at(1).get<std::string>());
        if (cd.at("K").contains("notes"))
            cfg.trust_notes.push_back("K class data: " + cd.at("K").at("notes").get<std::string>());
        if (cd.contains("factors")) {
            for (auto& fj : cd.at("factors")) {
                std::vector<std::pair<std::string, std::string>> gens;
                for (auto& g : fj.at("generators"))
                    gens.emplace_back(g.at(0).get<std::string>(), g.at(1).get<std::string>());
                cfg.factor_class_gens.push_back(std::move(gens));
                if (fj.contains("notes"))
                    cfg.trust_notes.push_back("factor class data: " +
                                              fj.at("notes").get<std::string>());
            }
        }

        // known divisors
        if (j.contains("known_divisors")) {
            for (auto& d : j.at("known_divisors")) {
                KnownDivisorSpec k;
                k.label = d.at("label").get<std::string>();
                k.type = d.at("type").get<std::string>();
                if (k.type == "branch_orbit" || k.type == "half_bitangent")
                    k.orbit = d.at("orbit").get<int>();
                else if (k.type == "point") {
                    k.x = d.at("x").get<std::string>();
                    k.y = d.at("y").get<std::string>();
                } else if (k.type == "point_diff") {
                    k.p1 = {d.at("p1").at(0).get<std::string>(),
                            d.at("p1").at(1).get<std::string>()};
                    k.p2 = {d.at("p2").at(0).get<std::string>(),
                            d.at("p2").at(1).get<std::string>()};
                } else {
                    throw ConfigError("unknown known-divisor type " + k.type);
                }
                cfg.known_divisors.push_back(std::move(k));
            }
        }

        if (j.contains("budgets")) {
            cfg.budget_x_search = j.at("budgets").value("x_search", 40);
            cfg.budget_aux_primes = j.at("budgets").value("aux_primes", 48);
        }
        if (j.contains("precision")) cfg.precision_override = j.at("precision").get<int>();
        if (j.contains("count_cap")) cfg.count_cap = Int(j.at("count_cap").get<long long>());
        cfg.report_subfield_rank = j.value("report_subfield_rank", false);
        cfg.subfield_index = j.value("subfield_index", 1);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config schema error: ") + e.what());
    }
    return cfg;
}

DescentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace selmer
