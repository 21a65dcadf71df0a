#include <csk/root_isolation.hpp>

#include <deque>

namespace csk {

namespace {

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

SturmChain::SturmChain(const Polynomial& p) {
    seq.push_back(p);
    Polynomial d = p.derivative();
    if (d.is_zero()) return;
    seq.push_back(d);
    while (true) {
        Polynomial q, r;
        Polynomial::divmod(seq[seq.size() - 2], seq.back(), q, r);
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
}

int SturmChain::variations(const Rational& x) const {
    int count = 0;
    int prev = 0;
    for (const auto& p : seq) {
        const int s = sign_of(p(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

Polynomial squarefree_part(const Polynomial& p) {
    if (p.degree() <= 1) return p;
    const Polynomial g = gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    Polynomial q, r;
    Polynomial::divmod(p, g, q, r);
    return q;
}

Rational cauchy_root_bound(const Polynomial& p) {
    if (p.degree() < 1) throw validation_error("root bound of a constant polynomial");
    Rational largest(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rational a = abs(p.coeff(i) / p.leading());
        if (a > largest) largest = a;
    }
    return largest + 1;
}

std::vector<Rational> isolate_real_roots(const Polynomial& p, const Rational& width) {
    if (p.degree() < 1) return {};
    if (width <= 0) throw validation_error("refinement width must be positive");

    const SturmChain chain(p);
    const Rational bound = cauchy_root_bound(p);

    // Spans carry the root count of the open interval (lo, hi); endpoints are
    // kept off the root set so that sign-based refinement stays valid.
    struct Span {
        Rational lo, hi;
        int count;
    };
    std::deque<Span> work;
    std::vector<Rational> roots;
    std::vector<std::pair<Rational, Rational>> isolated;

    {
        const int total = chain.variations(-bound) - chain.variations(bound);
        if (total > 0) work.push_back({-bound, bound, total});
    }

    while (!work.empty()) {
        Span s = work.front();
        work.pop_front();
        if (s.count == 1) {
            isolated.emplace_back(s.lo, s.hi);
            continue;
        }
        Rational mid = (s.lo + s.hi) / 2;
        if (p(mid) == 0) {
            roots.push_back(mid);
            // carve out a root-free collar around the exact hit
            Rational delta = (s.hi - s.lo) / 4;
            while (true) {
                const Rational a = mid - delta, b = mid + delta;
                if (p(a) != 0 && p(b) != 0 &&
                    chain.variations(a) - chain.variations(b) == 1) {
                    const int left = chain.variations(s.lo) - chain.variations(a);
                    const int right = chain.variations(b) - chain.variations(s.hi);
                    if (left > 0) work.push_back({s.lo, a, left});
                    if (right > 0) work.push_back({b, s.hi, right});
                    break;
                }
                delta /= 2;
            }
            continue;
        }
        const int left = chain.variations(s.lo) - chain.variations(mid);
        const int right = s.count - left;
        if (left > 0) work.push_back({s.lo, mid, left});
        if (right > 0) work.push_back({mid, s.hi, right});
    }

    for (auto& [lo, hi] : isolated) {
        // exactly one simple root strictly inside; endpoints have opposite sign
        const int slo = sign_of(p(lo));
        while (hi - lo > width) {
            const Rational mid = (lo + hi) / 2;
            const int smid = sign_of(p(mid));
            if (smid == 0) { lo = hi = mid; break; }
            if (smid == slo) lo = mid;
            else hi = mid;
        }
        roots.push_back((lo + hi) / 2);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace csk
