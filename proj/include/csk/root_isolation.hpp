#pragma once

#include <csk/polynomial.hpp>

#include <vector>

namespace csk {

// Exact real-root isolation for squarefree rational polynomials via Sturm
// chains, plus bisection refinement inside the isolating intervals.

struct SturmChain {
    explicit SturmChain(const Polynomial& p);
    // sign variations of the chain at x
    int variations(const Rational& x) const;
    std::vector<Polynomial> seq;
};

// p / gcd(p, p')
Polynomial squarefree_part(const Polynomial& p);

// every real root lies strictly inside (-bound, bound)
Rational cauchy_root_bound(const Polynomial& p);

// All real roots of the squarefree polynomial p, ascending, each refined by
// exact bisection until the isolating interval is narrower than `width`.
// Returned values are interval midpoints (or the exact root when hit).
std::vector<Rational> isolate_real_roots(const Polynomial& p, const Rational& width);

}  // namespace csk
