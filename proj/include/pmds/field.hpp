/*
 * Copyright 2026 pmdskit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmds {

using Coeff = std::uint32_t;

/// One field element: coefficient vector over GF(p), lowest degree first.
/// Length always equals the degree of the owning FieldSpec.
struct Element {
    std::vector<Coeff> coeffs;

    Element() = default;
    Element(std::initializer_list<Coeff> init) : coeffs(init) {}
    explicit Element(std::vector<Coeff> c) : coeffs(std::move(c)) {}

    std::size_t size() const { return coeffs.size(); }
    Coeff operator[](std::size_t i) const { return coeffs[i]; }

    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element&, const Element&) = default;
};

namespace detail {

// Scalar arithmetic mod p. p < 2^31, so products fit in uint64.

inline std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + b) % p; }

inline std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + p - b % p) % p; }

inline std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

inline std::uint64_t invm(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("invm: division by zero");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

inline bool is_prime_u32(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomials over GF(p): vector<Coeff>, lowest degree first, not
// necessarily trimmed. Degree of the zero polynomial is treated as -1.

inline int poly_degree(const std::vector<Coeff>& a) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != 0) return static_cast<int>(i);
    return -1;
}

inline std::vector<Coeff> poly_mul(const std::vector<Coeff>& a, const std::vector<Coeff>& b, std::uint64_t p) {
    const int da = poly_degree(a), db = poly_degree(b);
    if (da < 0 || db < 0) return {};
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(da + db + 1), 0);
    for (int i = 0; i <= da; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j <= db; ++j)
            acc[static_cast<std::size_t>(i + j)] =
                (acc[static_cast<std::size_t>(i + j)] +
                 static_cast<std::uint64_t>(a[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(j)]) %
                p;
    }
    std::vector<Coeff> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<Coeff>(acc[i]);
    return out;
}

// Remainder of a mod divisor; divisor need not be monic.
inline std::vector<Coeff> poly_rem(std::vector<Coeff> a, const std::vector<Coeff>& divisor, std::uint64_t p) {
    const int dd = poly_degree(divisor);
    if (dd < 0) throw std::domain_error("poly_rem: division by zero polynomial");
    const std::uint64_t lead_inv = invm(divisor[static_cast<std::size_t>(dd)], p);
    for (int da = poly_degree(a); da >= dd; da = poly_degree(a)) {
        const std::uint64_t factor = mulm(a[static_cast<std::size_t>(da)], lead_inv, p);
        const int shift = da - dd;
        for (int i = 0; i <= dd; ++i) {
            auto& c = a[static_cast<std::size_t>(i + shift)];
            c = static_cast<Coeff>(subm(c, mulm(factor, divisor[static_cast<std::size_t>(i)], p), p));
        }
    }
    a.resize(static_cast<std::size_t>(std::max(poly_degree(a) + 1, 0)));
    return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool poly_irreducible(const std::vector<Coeff>& f, std::uint64_t p) {
    const int deg = poly_degree(f);
    if (deg < 1) return false;
    if (deg == 1) return true;
    for (int d = 1; d <= deg / 2; ++d) {
        // enumerate monic divisors of degree d by their low-part value
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        std::vector<Coeff> divisor(static_cast<std::size_t>(d + 1), 0);
        divisor[static_cast<std::size_t>(d)] = 1;
        for (std::uint64_t v = 0; v < count; ++v) {
            std::uint64_t x = v;
            for (int i = 0; i < d; ++i) {
                divisor[static_cast<std::size_t>(i)] = static_cast<Coeff>(x % p);
                x /= p;
            }
            if (poly_degree(poly_rem(f, divisor, p)) < 0) return false;
        }
    }
    return true;
}

// Inverse of a modulo the (irreducible, monic) modulus, via extended Euclid
// in GF(p)[x].
inline std::vector<Coeff> poly_inv_mod(const std::vector<Coeff>& a, const std::vector<Coeff>& modulus,
                                       std::uint64_t p) {
    std::vector<Coeff> r0 = modulus, r1 = a;
    std::vector<Coeff> t0 = {}, t1 = {1};
    while (poly_degree(r1) >= 0) {
        // quotient of r0 by r1
        std::vector<Coeff> q;
        {
            std::vector<Coeff> rem = r0;
            const int d1 = poly_degree(r1);
            const std::uint64_t lead_inv = invm(r1[static_cast<std::size_t>(d1)], p);
            q.assign(static_cast<std::size_t>(std::max(poly_degree(r0) - d1 + 1, 1)), 0);
            for (int dr = poly_degree(rem); dr >= d1; dr = poly_degree(rem)) {
                const std::uint64_t factor = mulm(rem[static_cast<std::size_t>(dr)], lead_inv, p);
                const int shift = dr - d1;
                q[static_cast<std::size_t>(shift)] = static_cast<Coeff>(factor);
                for (int i = 0; i <= d1; ++i) {
                    auto& c = rem[static_cast<std::size_t>(i + shift)];
                    c = static_cast<Coeff>(subm(c, mulm(factor, r1[static_cast<std::size_t>(i)], p), p));
                }
            }
            r0 = std::move(r1);
            r1 = std::move(rem);
            r1.resize(static_cast<std::size_t>(std::max(poly_degree(r1) + 1, 0)));
        }
        // t update: (t0, t1) <- (t1, t0 - q*t1)
        std::vector<Coeff> qt = poly_mul(q, t1, p);
        std::vector<Coeff> nt(std::max(t0.size(), qt.size()), 0);
        for (std::size_t i = 0; i < nt.size(); ++i) {
            const std::uint64_t lhs = i < t0.size() ? t0[i] : 0;
            const std::uint64_t rhs = i < qt.size() ? qt[i] : 0;
            nt[i] = static_cast<Coeff>(subm(lhs, rhs, p));
        }
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    const int d0 = poly_degree(r0);
    if (d0 != 0) throw std::domain_error("poly_inv_mod: element not invertible");
    const std::uint64_t scale = invm(r0[0], p);
    for (auto& c : t0) c = static_cast<Coeff>(mulm(c, scale, p));
    return t0;
}

// Solve the square GF(p) system M * x = rhs (column vectors, row-major M).
// Used once per tower to invert the coordinate basis; throws if singular.
inline std::vector<std::vector<Coeff>> gfp_invert(std::vector<std::vector<Coeff>> m, std::uint64_t p) {
    const std::size_t n = m.size();
    std::vector<std::vector<Coeff>> inv(n, std::vector<Coeff>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) throw std::logic_error("gfp_invert: singular basis matrix");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        const std::uint64_t piv_inv = invm(m[col][col], p);
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] = static_cast<Coeff>(mulm(m[col][j], piv_inv, p));
            inv[col][j] = static_cast<Coeff>(mulm(inv[col][j], piv_inv, p));
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            const std::uint64_t f = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] = static_cast<Coeff>(subm(m[row][j], mulm(f, m[col][j], p), p));
                inv[row][j] = static_cast<Coeff>(subm(inv[row][j], mulm(f, inv[col][j], p), p));
            }
        }
    }
    return inv;
}

}  // namespace detail

/// Description of GF(p^e), optionally layered as GF(q^N) over GF(q) with
/// q = p^base_degree. Immutable and cheap to copy (shared internals); all
/// arithmetic goes through the methods and is a pure function of its inputs.
class FieldSpec {
  public:
    FieldSpec() = default;

    std::uint32_t characteristic() const { return impl_->p; }
    std::uint32_t degree() const { return impl_->e; }
    std::uint64_t order() const { return impl_->order; }
    const std::vector<Coeff>& modulus() const { return impl_->modulus; }
    std::optional<std::uint32_t> base_degree() const { return impl_->base_deg; }
    bool has_tower() const { return impl_->base_deg.has_value(); }

    /// q = p^base_degree. Requires a declared tower.
    std::uint64_t base_order() const { return tower().base->order; }
    /// N with |field| = q^N.
    std::uint32_t tower_height() const { return impl_->e / *tower().base_deg; }
    /// Canonical GF(q) the tower sits on.
    FieldSpec base_spec() const { return FieldSpec(tower().base); }

    bool same_field(const FieldSpec& o) const {
        return impl_->p == o.impl_->p && impl_->e == o.impl_->e && impl_->modulus == o.impl_->modulus;
    }

    // --- element construction ---

    Element zero() const { return Element(std::vector<Coeff>(impl_->e, 0)); }

    Element one() const {
        auto v = std::vector<Coeff>(impl_->e, 0);
        v[0] = 1;
        return Element(std::move(v));
    }

    /// Element with value v in field enumeration order (base-p digits of v,
    /// lowest degree first). v must be < order().
    Element from_int(std::uint64_t v) const {
        if (v >= impl_->order) throw std::invalid_argument("from_int: value out of range");
        std::vector<Coeff> c(impl_->e, 0);
        for (std::uint32_t i = 0; i < impl_->e && v; ++i) {
            c[i] = static_cast<Coeff>(v % impl_->p);
            v /= impl_->p;
        }
        return Element(std::move(c));
    }

    std::uint64_t to_int(const Element& a) const {
        check(a);
        std::uint64_t v = 0;
        for (std::size_t i = a.size(); i-- > 0;) v = v * impl_->p + a[i];
        return v;
    }

    /// Validating constructor for externally supplied coefficient vectors.
    Element from_coeffs(std::vector<Coeff> c) const {
        if (c.size() != impl_->e) throw std::invalid_argument("from_coeffs: wrong length");
        for (const Coeff x : c)
            if (x >= impl_->p) throw std::invalid_argument("from_coeffs: coefficient not reduced mod p");
        return Element(std::move(c));
    }

    bool is_zero(const Element& a) const {
        check(a);
        return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](Coeff c) { return c == 0; });
    }

    // --- arithmetic ---

    Element add(const Element& a, const Element& b) const {
        check(a);
        check(b);
        std::vector<Coeff> c(impl_->e);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = static_cast<Coeff>(detail::addm(a[i], b[i], impl_->p));
        return Element(std::move(c));
    }

    Element sub(const Element& a, const Element& b) const {
        check(a);
        check(b);
        std::vector<Coeff> c(impl_->e);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = static_cast<Coeff>(detail::subm(a[i], b[i], impl_->p));
        return Element(std::move(c));
    }

    Element neg(const Element& a) const {
        check(a);
        std::vector<Coeff> c(impl_->e);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = static_cast<Coeff>(detail::subm(0, a[i], impl_->p));
        return Element(std::move(c));
    }

    Element mul(const Element& a, const Element& b) const {
        check(a);
        check(b);
        auto prod = detail::poly_mul(a.coeffs, b.coeffs, impl_->p);
        auto rem = detail::poly_rem(std::move(prod), impl_->modulus, impl_->p);
        rem.resize(impl_->e, 0);
        return Element(std::move(rem));
    }

    Element inv(const Element& a) const {
        check(a);
        if (is_zero(a)) throw std::domain_error("inv: division by zero");
        auto r = detail::poly_inv_mod(a.coeffs, impl_->modulus, impl_->p);
        r.resize(impl_->e, 0);
        return Element(std::move(r));
    }

    Element pow(const Element& a, std::uint64_t n) const {
        check(a);
        Element result = one();
        Element base = a;
        while (n) {
            if (n & 1) result = mul(result, base);
            base = mul(base, base);
            n >>= 1;
        }
        return result;
    }

    // --- tower operations ---

    /// a^(q^j) with q = p^base_degree. GF(q)-linear on the tower.
    Element frobenius(const Element& a, std::uint32_t j) const {
        const auto& t = tower();
        Element r = a;
        for (std::uint32_t step = 0; step < j; ++step) r = pow(r, t.base->order);
        return r;
    }

    /// Lift an element of the canonical base field GF(q) into this field.
    Element embed(const Element& sub) const {
        const auto& t = tower();
        if (sub.size() != t.base->e) throw std::invalid_argument("embed: wrong subfield element length");
        Element acc = zero();
        Element theta_pow = one();
        for (std::size_t i = 0; i < sub.size(); ++i) {
            if (sub[i] != 0) acc = add(acc, scale(theta_pow, sub[i]));
            theta_pow = mul(theta_pow, impl_->theta);
        }
        return acc;
    }

    /// embed() with an explicit source spec; rejects non-matching towers.
    Element embed(const Element& sub, const FieldSpec& sub_spec) const {
        if (!sub_spec.same_field(base_spec()))
            throw std::invalid_argument("embed: subfield spec does not match the tower base");
        return embed(sub);
    }

    /// Coordinates of a over GF(q) w.r.t. the power basis {x^j : j < N}.
    /// Inverse of z = sum_j embed(c_j) * x^j.
    std::vector<Element> expand_to_base(const Element& a) const {
        const auto& t = tower();
        check(a);
        const std::uint32_t b = *t.base_deg;
        const std::uint32_t height = impl_->e / b;
        std::vector<Element> out;
        out.reserve(height);
        for (std::uint32_t j = 0; j < height; ++j) {
            std::vector<Coeff> c(b, 0);
            for (std::uint32_t ti = 0; ti < b; ++ti) {
                const auto& row = t.expand_rows[static_cast<std::size_t>(j) * b + ti];
                std::uint64_t acc = 0;
                for (std::uint32_t col = 0; col < impl_->e; ++col)
                    acc = (acc + static_cast<std::uint64_t>(row[col]) * a[col]) % impl_->p;
                c[ti] = static_cast<Coeff>(acc);
            }
            out.push_back(Element(std::move(c)));
        }
        return out;
    }

    /// The class of x, a degree-N generator of the tower over GF(q).
    Element generator() const {
        if (impl_->e == 1) return one();
        return from_int(impl_->p);
    }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.same_field(b) && a.impl_->base_deg == b.impl_->base_deg;
    }

    // --- factories ---

    /// Canonical GF(p^e): lexicographically smallest monic irreducible
    /// modulus (coefficients compared low-to-high as a base-p integer).
    /// Deterministic across runs.
    static FieldSpec make(std::uint32_t p, std::uint32_t e) {
        return FieldSpec(build(p, e, find_canonical_modulus(p, e), std::nullopt));
    }

    /// Canonical GF(q^N) over GF(q), q = p^base_deg, as GF(p^{base_deg*N})
    /// with the base embedded.
    static FieldSpec make_tower(std::uint32_t p, std::uint32_t base_deg, std::uint32_t height) {
        if (base_deg < 1 || height < 1) throw std::invalid_argument("make_tower: degrees must be >= 1");
        const std::uint32_t e = base_deg * height;
        return FieldSpec(build(p, e, find_canonical_modulus(p, e), base_deg));
    }

    /// Explicit modulus (verified monic + irreducible), e.g. from a file.
    static FieldSpec from_parts(std::uint32_t p, std::uint32_t e, std::vector<Coeff> modulus,
                                std::optional<std::uint32_t> base_deg) {
        return FieldSpec(build(p, e, std::move(modulus), base_deg));
    }

  private:
    struct Impl {
        std::uint32_t p = 0;
        std::uint32_t e = 0;
        std::uint64_t order = 0;
        std::vector<Coeff> modulus;
        std::optional<std::uint32_t> base_deg;
        // tower caches (populated iff base_deg):
        std::shared_ptr<const Impl> base;
        Element theta;  // root of the base modulus inside this field
        std::vector<std::vector<Coeff>> expand_rows;  // e rows of the inverse basis matrix
    };

    explicit FieldSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    void check(const Element& a) const {
        if (a.size() != impl_->e) throw std::invalid_argument("element does not belong to this field");
    }

    Element scale(const Element& a, Coeff c) const {
        std::vector<Coeff> out(impl_->e);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = static_cast<Coeff>(detail::mulm(a[i], c, impl_->p));
        return Element(std::move(out));
    }

    const Impl& tower() const {
        if (!impl_->base_deg) throw std::logic_error("operation requires a tower field (no base declared)");
        return *impl_;
    }

    static std::uint64_t checked_order(std::uint32_t p, std::uint32_t e) {
        std::uint64_t v = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            v *= p;
            if (v > (1ull << 31)) throw std::invalid_argument("field too large: p^e must be <= 2^31");
        }
        return v;
    }

    static std::vector<Coeff> find_canonical_modulus(std::uint32_t p, std::uint32_t e) {
        if (!detail::is_prime_u32(p)) throw std::invalid_argument("make_field: p is not prime");
        if (e < 1) throw std::invalid_argument("make_field: degree must be >= 1");
        const std::uint64_t low_count = checked_order(p, e);
        std::vector<Coeff> f(static_cast<std::size_t>(e) + 1, 0);
        f[e] = 1;
        for (std::uint64_t v = 0; v < low_count; ++v) {
            std::uint64_t x = v;
            for (std::uint32_t i = 0; i < e; ++i) {
                f[i] = static_cast<Coeff>(x % p);
                x /= p;
            }
            if (detail::poly_irreducible(f, p)) return f;
        }
        throw std::logic_error("make_field: no irreducible polynomial found");  // unreachable
    }

    static std::shared_ptr<const Impl> build(std::uint32_t p, std::uint32_t e, std::vector<Coeff> modulus,
                                             std::optional<std::uint32_t> base_deg) {
        if (!detail::is_prime_u32(p)) throw std::invalid_argument("field: p is not prime");
        if (e < 1) throw std::invalid_argument("field: degree must be >= 1");
        if (modulus.size() != static_cast<std::size_t>(e) + 1 || modulus[e] != 1)
            throw std::invalid_argument("field: modulus must be monic of degree e");
        for (const Coeff c : modulus)
            if (c >= p) throw std::invalid_argument("field: modulus coefficient not reduced mod p");
        if (!detail::poly_irreducible(modulus, p)) throw std::invalid_argument("field: modulus is reducible");
        if (base_deg && (*base_deg < 1 || e % *base_deg != 0))
            throw std::invalid_argument("field: base_degree must divide the degree");

        auto impl = std::make_shared<Impl>();
        impl->p = p;
        impl->e = e;
        impl->order = checked_order(p, e);
        impl->modulus = std::move(modulus);
        impl->base_deg = base_deg;
        FieldSpec self{std::shared_ptr<const Impl>(impl)};

        if (base_deg) {
            const std::uint32_t b = *base_deg;
            impl->base = FieldSpec::make(p, b).impl_;

            // theta: first root (in enumeration order) of the base modulus.
            // The subfield of frobenius-fixed points always contains one.
            const auto& base_mod = impl->base->modulus;
            bool found = false;
            for (std::uint64_t v = 0; v < impl->order && !found; ++v) {
                const Element cand = self.from_int(v);
                Element acc = self.zero();
                for (std::size_t i = base_mod.size(); i-- > 0;) {
                    acc = self.mul(acc, cand);
                    if (base_mod[i] != 0) {
                        Element c = self.zero();
                        c.coeffs[0] = base_mod[i];
                        acc = self.add(acc, c);
                    }
                }
                if (self.is_zero(acc)) {
                    impl->theta = cand;
                    found = true;
                }
            }
            if (!found) throw std::logic_error("field: base modulus has no root in the extension");

            // basis {x^j * theta^t} -> coordinate matrix, inverted once.
            const std::uint32_t height = e / b;
            std::vector<std::vector<Coeff>> basis_cols(e);
            Element xpow = self.one();
            for (std::uint32_t j = 0; j < height; ++j) {
                Element theta_pow = self.one();
                for (std::uint32_t t = 0; t < b; ++t) {
                    basis_cols[static_cast<std::size_t>(j) * b + t] = self.mul(xpow, theta_pow).coeffs;
                    theta_pow = self.mul(theta_pow, impl->theta);
                }
                xpow = self.mul(xpow, self.generator());
            }
            // rows of the matrix to invert: row r, col c = basis_cols[c][r]
            std::vector<std::vector<Coeff>> mat(e, std::vector<Coeff>(e));
            for (std::uint32_t r = 0; r < e; ++r)
                for (std::uint32_t c = 0; c < e; ++c) mat[r][c] = basis_cols[c][r];
            impl->expand_rows = detail::gfp_invert(std::move(mat), p);
        }
        return impl;
    }

    std::shared_ptr<const Impl> impl_;
};

/// Canonical GF(p^e); see FieldSpec::make.
inline FieldSpec make_field(std::uint32_t p, std::uint32_t e) { return FieldSpec::make(p, e); }

/// Canonical GF(q^N)/GF(q) tower with q = p^base_deg.
inline FieldSpec make_tower_field(std::uint32_t p, std::uint32_t base_deg, std::uint32_t height) {
    return FieldSpec::make_tower(p, base_deg, height);
}

}  // namespace pmds
