#include "liouville/regimes.hpp"

#include <stdexcept>

namespace liouville {

std::string_view theorem_name(Theorem t) {
    switch (t) {
        case Theorem::T1: return "T1";
        case Theorem::T2: return "T2";
        case Theorem::T3: return "T3";
        case Theorem::T4: return "T4";
        case Theorem::T5: return "T5";
        case Theorem::T6: return "T6";
        case Theorem::T7: return "T7";
        case Theorem::T8: return "T8";
    }
    return "?";
}

std::optional<double> critical_exponent(int n, double alpha) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
    if (!(double(n) > alpha)) return std::nullopt;
    return double(n) * (alpha - 1.0) / (double(n) - alpha);
}

RegimeDecision classify(const RegimeQuery& query) {
    const int n = query.n;
    const double a = query.alpha, q = query.q;
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(a > 1.0)) throw std::invalid_argument("alpha must be > 1");
    if (!(q > 0.0)) throw std::invalid_argument("q must be > 0");

    RegimeDecision d;
    const bool alpha_le2 = a <= 2.0;
    const bool super = double(n) > a;
    if (super) d.critical_q = double(n) * (a - 1.0) / (double(n) - a);
    const double qc = d.critical_q.value_or(0.0);

    auto add = [&](Theorem t, std::string note) {
        d.applicable.push_back(t);
        d.notes.emplace_back(t, std::move(note));
    };

    if (n == 1 && alpha_le2)
        add(Theorem::T1, "n = 1, 1 < alpha <= 2: ordered entire weak solutions coincide");
    if (n == 2 && a == 2.0)
        add(Theorem::T2, "n = 2, alpha = 2: ordered entire weak solutions coincide");
    if (n >= 2 && alpha_le2 && super && q > a - 1.0 && q <= qc && q >= 1.0)
        add(Theorem::T3,
            "alpha-1 < q <= q* and q >= 1: ordered entire weak solutions coincide");
    if (n >= 2 && alpha_le2 && super && q > qc && q >= 1.0) {
        add(Theorem::T4,
            "q > q* and q >= 1: no ordered pair with divergent (u-v)^{q-nu} growth");
        add(Theorem::T5,
            "corollary of T4: no ordered pair with a critical-power gap plus delta");
        add(Theorem::T6, "corollary of T4: no ordered pair with a constant gap");
    }

    const bool gap_region = super && a - 1.0 < q && q < 1.0 && q <= qc;
    if (n >= 2 && alpha_le2 && super && q <= 1.0 && !gap_region)
        add(Theorem::T7, "0 < q <= 1: no ordered pair with divergent T7-family growth");
    if (gap_region) {
        d.uncovered_gap = true;
        d.gap_note =
            "no catalogued statement settles n > alpha, alpha-1 < q < 1, q <= q*";
    }
    if (n >= 3 && a == 2.0 && q == 1.0)
        add(Theorem::T8, "n >= 3, alpha = 2, q = 1: no strictly ordered pair exists");
    return d;
}

}  // namespace liouville
