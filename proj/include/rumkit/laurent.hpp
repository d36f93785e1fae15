#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rumkit/exact.hpp"

namespace rumkit {

/// Exponent vector in Z^rank. zbar^k is stored as exponent -k (on the torus
/// zbar = z^{-1}).
using ExpVec = std::vector<int>;

/// Graded lexicographic order with z1 > z2 > ... > z_rank: total degree
/// first, then lexicographic on the exponents. Returns <0, 0, >0.
int grlex_compare(const ExpVec& a, const ExpVec& b);

// Coefficient hooks shared by the exact and floating backends.
inline bool coeff_is_zero(const ExactScalar& c) { return c.is_zero(); }
inline bool coeff_is_zero(double c) { return c == 0.0; }
inline std::complex<double> coeff_to_complex(const ExactScalar& c) { return {c.to_double(), 0.0}; }
inline std::complex<double> coeff_to_complex(double c) { return {c, 0.0}; }

/// Multivariate Laurent polynomial with finitely many terms. Terms map
/// exponent vectors to nonzero coefficients; the zero polynomial has an
/// empty map. The coefficient type is ExactScalar for the exact backend
/// and double for the floating backend.
template <class Coeff>
class BasicLaurentPoly {
public:
    using Terms = std::map<ExpVec, Coeff>;

    BasicLaurentPoly() : rank_(0) {}
    explicit BasicLaurentPoly(int rank) : rank_(rank) {}

    static BasicLaurentPoly constant(int rank, Coeff c) {
        BasicLaurentPoly p(rank);
        p.add_term(ExpVec(static_cast<size_t>(rank), 0), std::move(c));
        return p;
    }

    static BasicLaurentPoly monomial(int rank, ExpVec exps, Coeff c) {
        BasicLaurentPoly p(rank);
        p.check_rank_of(exps);
        p.add_term(std::move(exps), std::move(c));
        return p;
    }

    /// The variable z_i (0-based) raised to power e.
    static BasicLaurentPoly variable(int rank, int i, int e = 1) {
        ExpVec v(static_cast<size_t>(rank), 0);
        v.at(static_cast<size_t>(i)) = e;
        return monomial(rank, std::move(v), Coeff(1));
    }

    int rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    /// Accumulate a term, dropping it if the total cancels.
    void add_term(ExpVec exps, Coeff c) {
        check_rank_of(exps);
        if (coeff_is_zero(c)) return;
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            terms_.emplace(std::move(exps), std::move(c));
        } else {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    BasicLaurentPoly operator-() const {
        BasicLaurentPoly r(rank_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    BasicLaurentPoly& operator+=(const BasicLaurentPoly& o) {
        check_same_rank(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    BasicLaurentPoly& operator-=(const BasicLaurentPoly& o) {
        check_same_rank(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend BasicLaurentPoly operator+(BasicLaurentPoly a, const BasicLaurentPoly& b) { return a += b; }
    friend BasicLaurentPoly operator-(BasicLaurentPoly a, const BasicLaurentPoly& b) { return a -= b; }

    friend BasicLaurentPoly operator*(const BasicLaurentPoly& a, const BasicLaurentPoly& b) {
        a.check_same_rank(b);
        BasicLaurentPoly r(a.rank_);
        ExpVec e(static_cast<size_t>(a.rank_));
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    BasicLaurentPoly& operator*=(const BasicLaurentPoly& o) { return *this = *this * o; }

    BasicLaurentPoly scaled(const Coeff& c) const {
        BasicLaurentPoly r(rank_);
        if (coeff_is_zero(c)) return r;
        for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
        return r;
    }

    /// Multiply by the monomial z^gamma.
    BasicLaurentPoly monomial_shift(const ExpVec& gamma) const {
        check_rank_of(gamma);
        BasicLaurentPoly r(rank_);
        ExpVec e(static_cast<size_t>(rank_));
        for (const auto& [ea, c] : terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + gamma[i];
            r.terms_.emplace(e, c);
        }
        return r;
    }

    /// Substitute z_i -> z_i^{m_i}: every exponent vector is multiplied
    /// componentwise by m.
    BasicLaurentPoly substitute_power(const std::vector<int>& m) const {
        check_rank_of(m);
        BasicLaurentPoly r(rank_);
        ExpVec e(static_cast<size_t>(rank_));
        for (const auto& [ea, c] : terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] * m[i];
            r.add_term(e, c);  // m_i = 0 can merge terms
        }
        return r;
    }

    std::complex<double> evaluate(std::span<const std::complex<double>> point) const {
        if (static_cast<int>(point.size()) != rank_)
            throw ValidationError("evaluation point has wrong dimension");
        std::complex<double> sum = 0.0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> mono = 1.0;
            for (size_t i = 0; i < e.size(); ++i) mono *= int_pow(point[i], e[i]);
            sum += coeff_to_complex(c) * mono;
        }
        return sum;
    }

    /// Componentwise minimum exponent over the terms (zero vector for the
    /// zero polynomial).
    ExpVec min_exponents() const {
        ExpVec m(static_cast<size_t>(rank_), 0);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            (void)c;
            if (first) {
                m = e;
                first = false;
            } else {
                for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
            }
        }
        return m;
    }

    /// Largest term under grlex; polynomial must be nonzero.
    const std::pair<const ExpVec, Coeff>& leading_term() const {
        if (terms_.empty()) throw ValidationError("leading term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (grlex_compare(it->first, best->first) > 0) best = it;
        return *best;
    }

    /// Value at z = (1,...,1): the coefficient sum, exact.
    Coeff coefficient_sum() const {
        Coeff s{};
        for (const auto& [e, c] : terms_) {
            (void)e;
            s += c;
        }
        return s;
    }

    bool operator==(const BasicLaurentPoly& o) const {
        return rank_ == o.rank_ && terms_ == o.terms_;
    }
    bool operator!=(const BasicLaurentPoly& o) const { return !(*this == o); }

    static std::complex<double> int_pow(std::complex<double> z, int e) {
        if (e == 0) return 1.0;
        bool neg = e < 0;
        unsigned long n = neg ? -static_cast<long>(e) : static_cast<long>(e);
        std::complex<double> acc = 1.0;
        while (n) {
            if (n & 1) acc *= z;
            z *= z;
            n >>= 1;
        }
        return neg ? 1.0 / acc : acc;
    }

private:
    int rank_;
    Terms terms_;

    void check_same_rank(const BasicLaurentPoly& o) const {
        if (rank_ != o.rank_) throw ValidationError("Laurent polynomial dimension mismatch");
    }
    template <class V>
    void check_rank_of(const V& v) const {
        if (static_cast<int>(v.size()) != rank_)
            throw ValidationError("exponent vector has wrong dimension");
    }
};

using LaurentPoly = BasicLaurentPoly<ExactScalar>;
using FloatLaurentPoly = BasicLaurentPoly<double>;

/// Drop the exact coefficients to double precision.
FloatLaurentPoly to_float(const LaurentPoly& p);

/// Display names for the Laurent variables: z, w, u for rank <= 3, else z1..zn.
std::vector<std::string> variable_names(int rank);

/// Render with terms in descending grlex order. `spaced` = " + "/" - "
/// separators (polynomial reports); unspaced = compact entries for the
/// symbol grid (e.g. "-4+4z^-1"). Coefficients are juxtaposed with the
/// monomial; variables are joined with '*'.
template <class Coeff>
std::string render_poly(const BasicLaurentPoly<Coeff>& p,
                        const std::vector<std::string>& vars, bool spaced);

std::string coeff_display(const ExactScalar& c);
std::string coeff_display(double c);

/// Exact quotient p / q; throws if the division is not exact. Intended for
/// the fraction-free elimination path where exactness is guaranteed.
LaurentPoly exact_divide(const LaurentPoly& p, const LaurentPoly& q);

} // namespace rumkit
