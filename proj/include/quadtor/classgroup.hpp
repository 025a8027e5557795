#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "quadtor/contfrac.hpp"
#include "quadtor/ideal.hpp"
#include "quadtor/qform.hpp"

namespace quadtor {

// Canonical name of an ideal/form class: the lexicographically least reduced
// form of the class, in the requested strictness.
struct ClassLabel {
    QForm form;
    Strictness strictness;

    bool operator==(const ClassLabel& o) const {
        return form == o.form && strictness == o.strictness;
    }
};

// Exhaustive description of the form class group of discriminant m: every
// reduced form, partitioned into rho-cycles (narrow classes), plus the
// pairing of cycles under multiplication by the class of (sqrt(m)) that
// folds them into wide classes.  Built once per m and shared read-only.
class ClassData {
  public:
    explicit ClassData(const Int& m) : m_(m) {
        enumerate_reduced_forms();
        partition_into_cycles();
        principal_idx_ = narrow_class_of(QForm::principal(m_));
        sqrtm_idx_ = narrow_class_of(QForm::sqrtm_form(m_));
        compute_wide_partners();
    }

    const Int& m() const { return m_; }

    int narrow_class_count() const { return static_cast<int>(cycles_.size()); }

    int wide_class_count() const {
        int n = 0;
        for (int i = 0; i < narrow_class_count(); ++i)
            if (wide_partner_[i] >= i) ++n;
        return n;
    }

    int principal_index() const { return principal_idx_; }
    int sqrtm_index() const { return sqrtm_idx_; }

    // narrow class containing the given form
    int narrow_class_of(const QForm& f) const {
        QForm r = reduce(f).first;
        auto it = cycle_index_.find(r.key());
        if (it == cycle_index_.end())
            throw internal_error("ClassData: reduced form missing from enumeration");
        return it->second;
    }

    // smaller of the two narrow indices making up the wide class
    int wide_index_of(int narrow_idx) const {
        return std::min(narrow_idx, wide_partner_[narrow_idx]);
    }

    int wide_class_of(const QForm& f) const { return wide_index_of(narrow_class_of(f)); }

    bool narrow_trivial(int narrow_idx) const { return narrow_idx == principal_idx_; }

    bool wide_trivial(int narrow_idx) const {
        return narrow_idx == principal_idx_ || narrow_idx == sqrtm_idx_;
    }

    QForm narrow_label(int narrow_idx) const { return lex_least(cycles_[narrow_idx]); }

    QForm wide_label(int narrow_idx) const {
        QForm best = lex_least(cycles_[narrow_idx]);
        int partner = wide_partner_[narrow_idx];
        if (partner != narrow_idx) {
            QForm other = lex_least(cycles_[partner]);
            if (other.lex_less(best)) best = other;
        }
        return best;
    }

    ClassLabel label(int narrow_idx, Strictness s) const {
        return {s == Strictness::narrow ? narrow_label(narrow_idx) : wide_label(narrow_idx), s};
    }

    int compose_narrow(int i, int j) const {
        return narrow_class_of(compose(cycles_[i].front(), cycles_[j].front()));
    }

    // all wide classes X with X^2 trivial in the wide group, as narrow reps
    std::vector<int> two_torsion_wide() const {
        std::vector<int> out;
        for (int i = 0; i < narrow_class_count(); ++i) {
            if (wide_partner_[i] < i) continue;  // one rep per wide class
            if (wide_trivial(compose_narrow(i, i))) out.push_back(i);
        }
        return out;
    }

    std::vector<int> two_torsion_narrow() const {
        std::vector<int> out;
        for (int i = 0; i < narrow_class_count(); ++i)
            if (narrow_trivial(compose_narrow(i, i))) out.push_back(i);
        return out;
    }

    // subgroup of the wide class group generated by the given classes
    std::vector<int> wide_subgroup(const std::vector<int>& generator_reps) const {
        std::vector<int> members{wide_index_of(principal_idx_)};
        std::vector<int> frontier = members;
        auto contains = [&](int x) {
            for (int v : members)
                if (v == x) return true;
            return false;
        };
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int f : frontier)
                for (int g : generator_reps) {
                    int prod = wide_index_of(compose_narrow(f, g));
                    if (!contains(prod)) {
                        members.push_back(prod);
                        next.push_back(prod);
                    }
                }
            frontier = std::move(next);
        }
        std::sort(members.begin(), members.end());
        return members;
    }

    const std::vector<std::vector<QForm>>& cycles() const { return cycles_; }

    const std::vector<QForm>& reduced_forms() const { return reduced_forms_; }

  private:
    static QForm lex_least(const std::vector<QForm>& forms) {
        const QForm* best = &forms.front();
        for (const auto& f : forms)
            if (f.lex_less(*best)) best = &f;
        return *best;
    }

    // all (a, b, c) with b odd in (0, sqrt(m)), a*c = (b^2 - m)/4, primitive,
    // satisfying the reduction window
    void enumerate_reduced_forms() {
        Int s0 = isqrt(m_);
        for (Int b = 1; b <= s0; b += 2) {
            Int n = divexact_checked(m_ - b * b, 4, "ClassData: m = 1 mod 4");
            // window sqrt(m) - b < 2|a| < sqrt(m) + b
            Int lo = s0 - b, hi = s0 + b;
            for (Int a2 = lo + 1; a2 <= hi; ++a2) {
                if (a2 <= 0 || mod_euclid(a2, 2) != 0) continue;
                Int a = a2 / 2;
                if (!divides(a, n)) continue;
                Int c = -(n / a);
                for (int sign = 0; sign < 2; ++sign) {
                    Int fa = sign ? -a : a, fc = sign ? -c : c;
                    if (gcd(fa, gcd(b, fc)) != 1) continue;
                    reduced_forms_.emplace_back(fa, b, fc, m_);
                }
            }
        }
    }

    void partition_into_cycles() {
        std::unordered_map<std::string, bool> seen;
        for (const auto& f : reduced_forms_) seen[f.key()] = false;
        for (const auto& f : reduced_forms_) {
            if (seen.at(f.key())) continue;
            std::vector<QForm> cyc = cycle(f);
            int idx = static_cast<int>(cycles_.size());
            for (const auto& g : cyc) {
                auto it = seen.find(g.key());
                if (it == seen.end() || it->second)
                    throw internal_error("ClassData: cycle left the reduced enumeration");
                it->second = true;
                cycle_index_[g.key()] = idx;
            }
            cycles_.push_back(std::move(cyc));
        }
        for (const auto& [key, visited] : seen)
            if (!visited) throw internal_error("ClassData: reduced form in no cycle: " + key);
    }

    void compute_wide_partners() {
        wide_partner_.assign(cycles_.size(), -1);
        QForm shift = QForm::sqrtm_form(m_);
        for (size_t i = 0; i < cycles_.size(); ++i) {
            int j = narrow_class_of(compose(cycles_[i].front(), shift));
            wide_partner_[i] = j;
        }
        for (size_t i = 0; i < cycles_.size(); ++i)
            if (wide_partner_[wide_partner_[i]] != static_cast<int>(i))
                throw internal_error("ClassData: sqrt(m) pairing is not an involution");
    }

    Int m_;
    std::vector<QForm> reduced_forms_;
    std::vector<std::vector<QForm>> cycles_;
    std::unordered_map<std::string, int> cycle_index_;
    std::vector<int> wide_partner_;
    int principal_idx_ = -1;
    int sqrtm_idx_ = -1;
};

namespace detail {

struct GeneratorSearch {
    bool found = false;
    Mat2 transform;  // F о transform = target principal form
    int norm_sign = 0;
};

// Walk the cycle of `anchor` (a principal-type form) looking for `target`,
// returning the combined transform when found.
inline GeneratorSearch search_principal_cycle(const QForm& anchor, const QForm& target,
                                              const Mat2& u_target, int norm_sign) {
    auto [ra, ua] = reduce(anchor);
    QForm g = ra;
    Mat2 w = Mat2::identity();
    do {
        if (g == target) {
            GeneratorSearch r;
            r.found = true;
            r.transform = u_target.mul(ua.mul(w).inverse_unimodular());
            r.norm_sign = norm_sign;
            return r;
        }
        auto [ng, mstep] = rho_with_transform(g);
        g = ng;
        w = w.mul(mstep);
    } while (!(g == ra));
    return {};
}

}  // namespace detail

// Explicit generator of the ideal attached to F, when that ideal is
// principal in the wide sense.  The transform carrying F to the principal
// form (leading coefficient +1 or -1) is applied to the ideal basis
// (a, (b+sqrt(m))/2); its first column is a generator of norm +-a.  The
// result is verified against the ideal before returning.
inline std::optional<QuadInt> principal_generator(const QForm& f) {
    const Int m = f.D;
    QForm g = detail::positive_leading(f);
    IdealNF ideal(1, g.a, mod_window(g.b, g.a), m);

    auto [r, u] = reduce(g);
    detail::GeneratorSearch hit =
        detail::search_principal_cycle(QForm::principal(m), r, u, +1);
    if (!hit.found) hit = detail::search_principal_cycle(QForm::principal_negative(m), r, u, -1);
    if (!hit.found) return std::nullopt;

    const Mat2& v = hit.transform;
    QuadInt alpha(2 * g.a * v.e[0][0] + g.b * v.e[1][0], v.e[1][0], m);
    if (alpha.is_zero() || abs(alpha.norm()) != g.a)
        throw internal_error("principal_generator: generator norm mismatch");
    if (principal_ideal(alpha) == ideal) return alpha;
    QuadInt beta = alpha.conj();
    if (principal_ideal(beta) == ideal) return beta;
    throw internal_error("principal_generator: extracted element does not generate the ideal");
}

}  // namespace quadtor
