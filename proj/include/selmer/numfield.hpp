#pragma once

#include "selmer/poly.hpp"
#include "selmer/zfactor.hpp"

#include <memory>
#include <string>

namespace selmer {

// Number field Q(theta) presented by a monic integer irreducible polynomial.
// The rationals are the degree-1 field with defining polynomial x.
class NumberField;
using NfPtr = std::shared_ptr<const NumberField>;

class NumberField {
  public:
    NumberField(std::string label, QPoly defining, bool check_irreducible = true);

    const std::string& label() const { return label_; }
    const QPoly& defining() const { return g_; }
    int degree() const { return g_.degree(); }
    bool is_rationals() const { return g_.degree() == 1; }

    static NfPtr rationals();
    static NfPtr make(std::string label, QPoly defining, bool check_irreducible = true) {
        return std::make_shared<NumberField>(std::move(label), std::move(defining),
                                             check_irreducible);
    }
    // Structural identity: same presentation means same field.
    friend bool same_field(const NfPtr& a, const NfPtr& b) {
        return a == b || (a && b && a->g_ == b->g_);
    }

  private:
    std::string label_;
    QPoly g_;
};

struct NfElem {
    NfPtr F;
    QPoly rep;  // degree < [F:Q]

    NfElem() = default;
    NfElem(NfPtr field, QPoly r) : F(std::move(field)), rep(std::move(r)) {
        if (rep.degree() >= F->degree()) rep = poly_mod(rep, F->defining());
    }
    static NfElem from_rat(const NfPtr& F, const Rat& a) { return NfElem(F, QPoly::constant(a)); }
    static NfElem gen(const NfPtr& F) {
        if (F->is_rationals())
            return from_rat(F, -F->defining().coeff(0));
        return NfElem(F, QPoly::monomial(Rat(1), 1));
    }

    bool is_zero() const { return rep.is_zero(); }
    bool is_rational() const { return rep.degree() <= 0; }
    Rat to_rational() const {
        if (!is_rational()) throw ComputationError("element is not rational");
        return rep.is_zero() ? Rat(0) : rep.coeff(0);
    }

    friend bool operator==(const NfElem& a, const NfElem& b) { return a.rep == b.rep; }
    friend NfElem operator+(const NfElem& a, const NfElem& b) { return NfElem(a.F, a.rep + b.rep); }
    friend NfElem operator-(const NfElem& a, const NfElem& b) { return NfElem(a.F, a.rep - b.rep); }
    friend NfElem operator-(const NfElem& a) { return NfElem(a.F, -a.rep); }
    friend NfElem operator*(const NfElem& a, const NfElem& b) {
        return NfElem(a.F, poly_mod(a.rep * b.rep, a.F->defining()));
    }
    NfElem inv() const;
    friend NfElem operator/(const NfElem& a, const NfElem& b) { return a * b.inv(); }
    NfElem pow(long e) const;

    Rat norm_q() const;   // N_{F/Q}
    Rat trace_q() const;  // Tr_{F/Q}
    // Smallest positive integer d with d * this integral (denominator of the
    // element w.r.t. the equation order Z[theta]).
    Int denominator() const;
    std::string str() const { return poly_to_string(rep, F->label()); }
};

inline NfElem ring_zero(const NfElem& a) { return NfElem::from_rat(a.F, Rat(0)); }
inline NfElem ring_one(const NfElem& a) { return NfElem::from_rat(a.F, Rat(1)); }

using NfPoly = Poly<NfElem>;

inline NfPoly qpoly_to_nf(const QPoly& f, const NfPtr& F) {
    return f.map([&](const Rat& c) { return NfElem::from_rat(F, c); });
}

// Field homomorphism src -> dst determined by the image of the generator.
struct NfHom {
    NfPtr src, dst;
    NfElem gen_image;

    NfHom() = default;
    NfHom(NfPtr s, NfPtr d, NfElem img);  // validates g_src(img) == 0

    static NfHom identity(const NfPtr& F) { return NfHom(F, F, NfElem::gen(F)); }
    NfElem apply(const NfElem& a) const {
        if (!same_field(a.F, src)) throw ComputationError("NfHom applied to element of wrong field");
        return a.rep.eval_mapped(gen_image, [&](const Rat& c) {
            return NfElem::from_rat(dst, c);
        });
    }
    NfPoly apply_poly(const NfPoly& f) const {
        return f.map([&](const NfElem& c) { return apply(c); });
    }
};

// Relative structure of L over K along an embedding.
struct RelativeExt {
    NfHom emb;       // K -> L
    NfElem alpha;    // K-primitive element of L
    NfPoly minpoly;  // of alpha over K, monic, degree [L:K]

    int rel_degree() const { return minpoly.degree(); }
};

// Express a in K-coordinates w.r.t. the basis {alpha^i theta_K^j}; used to
// build the relative view of L over K. Throws if alpha does not generate.
RelativeExt relative_extension(const NfHom& emb, const NfElem& alpha);

// Minimal polynomial of a over the subfield K (embedded via emb).
NfPoly relative_minpoly(const NfHom& emb, const NfElem& a);

// Write a as a K-polynomial in ext.alpha: a = sum c_i alpha^i with c_i in K.
NfPoly express_in_relative_basis(const RelativeExt& ext, const NfElem& a);

// N_{L/K}(a) via the resultant of the relative minimal polynomial of the
// basis with the expression of a; `a` an element of ext's big field.
NfElem relative_norm(const RelativeExt& ext, const NfElem& a);

// Oracle route: determinant of multiplication-by-a on the K-basis of L.
NfElem relative_norm_by_det(const RelativeExt& ext, const NfElem& a);

// Minimal polynomial over Q of an arbitrary element.
QPoly absolute_minpoly(const NfElem& a);

}  // namespace selmer
