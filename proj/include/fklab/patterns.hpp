#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fklab/field.hpp"
#include "fklab/kernels.hpp"

namespace fklab {

using Point2 = std::pair<FiniteField::Elem, FiniteField::Elem>;

struct PatternReport {
    std::string search_space;
    std::vector<std::vector<FieldElement>> hits;   // one witness per hit
    bool exhaustive = false;
    bool exploratory = false;   // finite analog of a density statement; no pass/fail meaning
};

/// {(a, t/a) : a != 0}
std::vector<Point2> hyperbola(const FiniteField& F, FiniteField::Elem t);
bool on_hyperbola(const FiniteField& F, FiniteField::Elem t, Point2 v);

/// Exhaustive search for (x, y, z) in (F_q^*)^3 with 1/(x+y) = 1/x + 1/y, 1/(y+z) = 1/y + 1/z,
/// 1/(x+y+z) = 1/x + 1/y + 1/z (all denominators nonzero).
PatternReport hyperbola_triple_search(const FieldDescriptor& d);
bool is_hyperbola_triple(const FiniteField& F, const kernels::Triple& t);

/// All F c F_q^2 with |F| = size and (F - F) \ {0} inside H_t, by incremental growth; each F is
/// listed once, points in increasing order.
std::vector<std::vector<Point2>> hyperbola_diffsets(const FiniteField& F, FiniteField::Elem t, unsigned size);
/// Same sets by plain enumeration of all size-subsets (reference route; small q only).
std::vector<std::vector<Point2>> hyperbola_diffsets_naive(const FiniteField& F, FiniteField::Elem t, unsigned size);
PatternReport hyperbola_diffset_search(const FieldDescriptor& d, const FieldElement& t, unsigned size);

struct ProdCoverage {
    std::vector<FiniteField::Elem> covered;   // sorted codes
    double fraction = 0;
};
/// Prod(E - E) = {x y : (x, y) in E - E}.
ProdCoverage prod_coverage(const FiniteField& F, const std::vector<Point2>& E);

/// Pairs (u, v) in E x E with (u1 - v1)^2 - (u2 - v2)^2 = z, found through the change of variables
/// (x1, x2) -> (x1 + x2, x1 - x2), which turns the form into a product of coordinate differences.
PatternReport spacetime_search(const FieldDescriptor& d, const FieldElement& z, const std::vector<Point2>& E,
                               std::size_t max_hits = 1);
/// Direct scan of all ordered pairs (reference route); returns every witness.
std::vector<std::pair<Point2, Point2>> spacetime_scan(const FiniteField& F, FiniteField::Elem z, const std::vector<Point2>& E);
/// Values z realized by some pair, via the transformed product set.
std::vector<FiniteField::Elem> spacetime_values(const FiniteField& F, const std::vector<Point2>& E);

struct SpacetimeCounterexample {
    std::vector<FiniteField::Elem> Eo;
    std::vector<Point2> E;    // {(x1, x2) : x1 + x2 in Eo}
    bool one_not_in_sumset = false;
    bool witness_for_one = false;
};
/// Characteristic-2 construction: given Eo with 1 not in Eo + Eo, E = {(x1, x2) : x1 + x2 in Eo}
/// never realizes z = 1.
SpacetimeCounterexample spacetime_char2_counterexample(const FiniteField& F, std::vector<FiniteField::Elem> Eo);

/// Laurent polynomial sum_i c_i X^i; `coeffs` maps exponent -> coefficient, exponent 0 must be absent/zero.
struct LaurentPoly {
    std::vector<std::pair<int, FieldElement>> terms;
    FieldElement eval(const FieldElement& a) const;
    std::string to_string() const;
};
/// First a in T \ {0} (in the given order) with p(a) in E - E, or absence over T.
PatternReport laurent_fs_search(const std::vector<FieldElement>& T, const std::vector<FieldElement>& E,
                                const LaurentPoly& poly);

}  // namespace fklab
