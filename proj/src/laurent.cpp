#include "rumkit/laurent.hpp"

#include <numeric>
#include <sstream>

namespace rumkit {

int grlex_compare(const ExpVec& a, const ExpVec& b) {
    if (a.size() != b.size()) throw ValidationError("exponent vectors of different dimension");
    long da = std::accumulate(a.begin(), a.end(), 0L);
    long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

FloatLaurentPoly to_float(const LaurentPoly& p) {
    FloatLaurentPoly r(p.rank());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.to_double());
    return r;
}

std::vector<std::string> variable_names(int rank) {
    if (rank == 1) return {"z"};
    if (rank == 2) return {"z", "w"};
    if (rank == 3) return {"z", "w", "u"};
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(rank));
    for (int i = 1; i <= rank; ++i) names.push_back("z" + std::to_string(i));
    return names;
}

std::string coeff_display(const ExactScalar& c) {
    if (c.is_rational()) return c.rational_part().get_str();
    return "(" + c.to_string() + ")";
}

std::string coeff_display(double c) {
    std::ostringstream os;
    os.precision(12);
    os << c;
    return os.str();
}

namespace {

std::string render_monomial(const ExpVec& exps, const std::vector<std::string>& vars) {
    std::string s;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (exps[i] != 1) s += "^" + std::to_string(exps[i]);
    }
    return s;
}

template <class Coeff>
bool coeff_is_one(const Coeff& c);

template <>
bool coeff_is_one(const ExactScalar& c) {
    return c == ExactScalar(1);
}
template <>
bool coeff_is_one(const double& c) {
    return c == 1.0;
}

template <class Coeff>
Coeff coeff_abs(const Coeff& c);

template <>
ExactScalar coeff_abs(const ExactScalar& c) {
    // Sign convention for display only: use the leading nonzero part.
    bool neg = c.rational_part() != 0 ? c.rational_part() < 0 : c.surd_part() < 0;
    return neg ? -c : c;
}
template <>
double coeff_abs(const double& c) {
    return c < 0 ? -c : c;
}

template <class Coeff>
bool coeff_is_negative(const Coeff& c);

template <>
bool coeff_is_negative(const ExactScalar& c) {
    return c.rational_part() != 0 ? c.rational_part() < 0 : c.surd_part() < 0;
}
template <>
bool coeff_is_negative(const double& c) {
    return c < 0;
}

} // namespace

template <class Coeff>
std::string render_poly(const BasicLaurentPoly<Coeff>& p,
                        const std::vector<std::string>& vars, bool spaced) {
    if (p.is_zero()) return "0";
    std::vector<const typename BasicLaurentPoly<Coeff>::Terms::value_type*> order;
    order.reserve(p.term_count());
    for (const auto& t : p.terms()) order.push_back(&t);
    std::sort(order.begin(), order.end(),
              [](const auto* a, const auto* b) { return grlex_compare(a->first, b->first) > 0; });
    std::string out;
    bool first = true;
    for (const auto* t : order) {
        const bool neg = coeff_is_negative(t->second);
        const Coeff mag = coeff_abs(t->second);
        const std::string mono = render_monomial(t->first, vars);
        std::string body;
        if (mono.empty()) {
            body = coeff_display(mag);
        } else if (coeff_is_one(mag)) {
            body = mono;
        } else {
            body = coeff_display(mag) + mono;
        }
        if (first) {
            if (neg) out += "-";
            out += body;
            first = false;
        } else if (spaced) {
            out += neg ? " - " : " + ";
            out += body;
        } else {
            out += neg ? "-" : "+";
            out += body;
        }
    }
    return out;
}

template std::string render_poly<ExactScalar>(const BasicLaurentPoly<ExactScalar>&,
                                              const std::vector<std::string>&, bool);
template std::string render_poly<double>(const BasicLaurentPoly<double>&,
                                         const std::vector<std::string>&, bool);

LaurentPoly exact_divide(const LaurentPoly& p, const LaurentPoly& q) {
    if (q.is_zero()) throw ValidationError("exact division by zero polynomial");
    if (p.rank() != q.rank()) throw ValidationError("Laurent polynomial dimension mismatch");
    LaurentPoly quotient(p.rank());
    if (p.is_zero()) return quotient;

    // Work on shifted copies with nonnegative exponents so grlex is a well
    // order; restore the net shift at the end.
    const ExpVec pmin = p.min_exponents();
    const ExpVec qmin = q.min_exponents();
    ExpVec up(pmin.size()), uq(qmin.size()), back(pmin.size());
    for (size_t i = 0; i < pmin.size(); ++i) {
        up[i] = -pmin[i];
        uq[i] = -qmin[i];
        back[i] = pmin[i] - qmin[i];
    }
    LaurentPoly rem = p.monomial_shift(up);
    const LaurentPoly div = q.monomial_shift(uq);
    const auto& [lead_e, lead_c] = div.leading_term();

    while (!rem.is_zero()) {
        const auto& [re, rc] = rem.leading_term();
        ExpVec diff(re.size());
        for (size_t i = 0; i < re.size(); ++i) {
            diff[i] = re[i] - lead_e[i];
            if (diff[i] < 0) throw ValidationError("polynomial division is not exact");
        }
        const ExactScalar c = rc / lead_c;
        quotient.add_term(diff, c);
        rem -= LaurentPoly::monomial(rem.rank(), std::move(diff), c) * div;
    }
    return quotient.monomial_shift(back);
}

} // namespace rumkit
