#include "hermovd/gf.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace hermovd {

namespace {

// --- local fixed-size polynomial helpers used before a ctx exists ---

using Poly = std::vector<u8>;  // ascending coefficients mod p

Poly polmul_mod(const Poly& a, const Poly& b, const Poly& f, u32 p) {
    const u32 deg = static_cast<u32>(f.size()) - 1;
    std::vector<u64> t(2 * deg, 0);
    for (u32 i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (u32 j = 0; j < b.size(); ++j) t[i + j] += u64(a[i]) * b[j];
    }
    for (u32 i = 2 * deg - 1; i >= deg; --i) {
        u64 v = t[i] % p;
        if (v) {
            for (u32 j = 0; j < deg; ++j) t[i - deg + j] += v * (p - f[j]);
        }
        if (i == deg) break;
    }
    Poly r(deg);
    for (u32 j = 0; j < deg; ++j) r[j] = static_cast<u8>(t[j] % p);
    return r;
}

// x^e mod f
Poly polpow_x(u64 e, const Poly& f, u32 p) {
    const u32 deg = static_cast<u32>(f.size()) - 1;
    Poly base(deg, 0), acc(deg, 0);
    acc[0] = 1;
    if (deg == 1) {
        // x ≡ -f0
        base[0] = static_cast<u8>((p - f[0]) % p);
    } else {
        base[1] = 1;
    }
    while (e) {
        if (e & 1) acc = polmul_mod(acc, base, f, p);
        base = polmul_mod(base, base, f, p);
        e >>= 1;
    }
    return acc;
}

bool pol_is_one(const Poly& a) {
    if (a.empty() || a[0] != 1) return false;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i]) return false;
    return true;
}

// order(x) == p^deg - 1 in F_p[X]/(f); implies f irreducible
bool is_primitive(const Poly& f, u32 p, u64 N,
                  const std::vector<std::pair<u64, int>>& nf) {
    if (f[0] == 0) return false;
    if (!pol_is_one(polpow_x(N, f, p))) return false;
    for (const auto& [r, e] : nf) {
        (void)e;
        if (pol_is_one(polpow_x(N / r, f, p))) return false;
    }
    return true;
}

}  // namespace

// --- Params ---

u64 Params::q() const { return checked_pow_u64(p, d, u64(1) << 62); }

u64 Params::qn_plus_1() const {
    return checked_pow_u64(p, u64(d) * n, u64(1) << 62) + 1;
}

void Params::validate() const {
    if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
    if (p >= 256) throw BudgetError("p must be below 256");
    if (d < 1) throw std::invalid_argument("d must be positive");
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("n must be an odd integer >= 3");
    if (deg() > kMaxDeg) throw BudgetError("field degree exceeds budget");
    checked_pow_u64(p, deg(), u64(1) << 62);  // p^{2nd} must fit
}

// --- FpMatrix ---

FpMatrix FpMatrix::identity(u32 n) {
    FpMatrix m;
    m.n = n;
    m.a.assign(size_t(n) * n, 0);
    for (u32 i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Fe FpMatrix::apply(const Fe& v, u32 p) const {
    Fe out{};
    for (u32 r = 0; r < n; ++r) {
        u64 acc = 0;
        const u8* row = &a[size_t(r) * n];
        for (u32 c = 0; c < n; ++c) acc += u64(row[c]) * v.c[c];
        out.c[r] = static_cast<u8>(acc % p);
    }
    return out;
}

FpMatrix FpMatrix::mul(const FpMatrix& o, u32 p) const {
    FpMatrix r;
    r.n = n;
    r.a.assign(size_t(n) * n, 0);
    for (u32 i = 0; i < n; ++i)
        for (u32 k = 0; k < n; ++k) {
            u8 v = at(i, k);
            if (!v) continue;
            for (u32 j = 0; j < n; ++j)
                r.at(i, j) = static_cast<u8>((r.at(i, j) + u32(v) * o.at(k, j)) % p);
        }
    return r;
}

// --- arithmetic ---

Fe FieldCtx::from_int(u64 v) const {
    Fe r{};
    r.c[0] = static_cast<u8>(v % par_.p);
    return r;
}

Fe FieldCtx::add(const Fe& a, const Fe& b) const {
    Fe r{};
    for (u32 i = 0; i < deg_; ++i)
        r.c[i] = static_cast<u8>((u32(a.c[i]) + b.c[i]) % par_.p);
    return r;
}

Fe FieldCtx::sub(const Fe& a, const Fe& b) const {
    Fe r{};
    for (u32 i = 0; i < deg_; ++i)
        r.c[i] = static_cast<u8>((u32(a.c[i]) + par_.p - b.c[i]) % par_.p);
    return r;
}

Fe FieldCtx::neg(const Fe& a) const { return sub(zero_, a); }

Fe FieldCtx::mul_poly(const Fe& a, const Fe& b) const {
    const u32 p = par_.p;
    u64 t[2 * kMaxDeg] = {0};
    for (u32 i = 0; i < deg_; ++i) {
        if (!a.c[i]) continue;
        const u64 ai = a.c[i];
        for (u32 j = 0; j < deg_; ++j) t[i + j] += ai * b.c[j];
    }
    for (u32 i = 2 * deg_ - 1; i >= deg_; --i) {
        u64 v = t[i] % p;
        if (v) {
            for (u32 j = 0; j < deg_; ++j) t[i - deg_ + j] += v * (p - modulus_[j]);
        }
        if (i == deg_) break;
    }
    Fe r{};
    for (u32 j = 0; j < deg_; ++j) r.c[j] = static_cast<u8>(t[j] % p);
    return r;
}

Fe FieldCtx::mul(const Fe& a, const Fe& b) const {
    if (!zech_log_.empty()) {
        const u64 ea = encode(a), eb = encode(b);
        if (ea == 0 || eb == 0) return zero_;
        u64 l = zech_log_[ea] + zech_log_[eb];
        if (l >= order_) l -= order_;
        return decode(zech_antilog_[l]);
    }
    return mul_poly(a, b);
}

Fe FieldCtx::inv_poly(const Fe& a) const {
    // extended Euclid in F_p[X] against the modulus
    const u32 p = par_.p;
    auto inv_mod_p = [&](u32 v) -> u32 {
        u32 r = 1, b = v, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    Poly r0(modulus_.begin(), modulus_.end());
    Poly r1(a.c.begin(), a.c.begin() + deg_);
    Poly s0(deg_ + 1, 0), s1(deg_ + 1, 0);
    s1[0] = 1;
    auto degree_of = [](const Poly& f) -> int {
        for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
            if (f[i]) return i;
        return -1;
    };
    int d0 = degree_of(r0), d1 = degree_of(r1);
    if (d1 < 0) throw std::domain_error("inverse of zero");
    while (d1 > 0) {
        // r0 -= (lead r0 / lead r1) x^(d0-d1) * r1, tracked in s
        while (d0 >= d1) {
            u32 c = u32(r0[d0]) * inv_mod_p(r1[d1]) % p;
            if (c) {
                u32 shift = u32(d0 - d1);
                for (int i = 0; i <= d1; ++i)
                    r0[i + shift] = static_cast<u8>((r0[i + shift] + p - c * r1[i] % p) % p);
                for (u32 i = 0; i + shift < s0.size(); ++i)
                    s0[i + shift] = static_cast<u8>((s0[i + shift] + p - c * s1[i] % p) % p);
            }
            d0 = degree_of(r0);
            if (d0 < 0) break;
        }
        std::swap(r0, r1);
        std::swap(s0, s1);
        std::swap(d0, d1);
        if (d1 < 0) break;
    }
    if (d1 != 0) throw std::domain_error("element not invertible");
    u32 c = inv_mod_p(r1[0]);
    Fe out{};
    for (u32 i = 0; i < deg_; ++i) out.c[i] = static_cast<u8>(u32(s1[i]) * c % p);
    return out;
}

Fe FieldCtx::inv(const Fe& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    if (!zech_log_.empty()) {
        u64 l = zech_log_[encode(a)];
        return decode(zech_antilog_[(order_ - l) % order_]);
    }
    return inv_poly(a);
}

Fe FieldCtx::pow(const Fe& a, u64 e) const {
    if (is_zero(a)) return e == 0 ? one_ : zero_;
    if (!zech_log_.empty()) {
        u64 l = mulmod_u64(zech_log_[encode(a)], e % order_, order_);
        return decode(zech_antilog_[l]);
    }
    Fe acc = one_, base = a;
    while (e) {
        if (e & 1) acc = mul_poly(acc, base);
        base = mul_poly(base, base);
        e >>= 1;
    }
    return acc;
}

Fe FieldCtx::frobenius(const Fe& a, u64 i) const {
    return frob_[i % deg_].apply(a, par_.p);
}

Fe FieldCtx::trace(const Fe& a, u32 src_degree, u32 dst_degree) const {
    if (src_degree == 0 || deg_ % src_degree != 0)
        throw std::invalid_argument("src degree must divide 2nd");
    if (dst_degree == 0 || src_degree % dst_degree != 0)
        throw std::invalid_argument("dst degree must divide src degree");
    if (!in_subfield(a, src_degree))
        throw std::invalid_argument("element not in the degree-src subfield");
    if (src_degree == deg_) return trace_matrix(dst_degree).apply(a, par_.p);
    Fe acc = zero_;
    for (u32 i = 0; i < src_degree / dst_degree; ++i)
        acc = add(acc, frobenius(a, u64(dst_degree) * i));
    return acc;
}

bool FieldCtx::in_subfield(const Fe& a, u32 degree) const {
    if (degree == 0 || deg_ % degree != 0)
        throw std::invalid_argument("subfield degree must divide 2nd");
    return frobenius(a, degree) == a;
}

u64 FieldCtx::encode(const Fe& a) const {
    u64 v = 0;
    for (u32 i = deg_; i-- > 0;) v = v * par_.p + a.c[i];
    return v;
}

Fe FieldCtx::decode(u64 v) const {
    Fe r{};
    for (u32 i = 0; i < deg_; ++i) {
        r.c[i] = static_cast<u8>(v % par_.p);
        v /= par_.p;
    }
    return r;
}

Fe FieldCtx::subfield_generator(u32 e) const {
    if (e == 0 || deg_ % e != 0)
        throw std::invalid_argument("subfield degree must divide 2nd");
    u64 sub_order = checked_pow_u64(par_.p, e, u64(1) << 62) - 1;
    return pow(g_, order_ / sub_order);
}

const FpMatrix& FieldCtx::trace_matrix(u32 dst_degree) const {
    auto it = trace_from_top_.find(dst_degree);
    if (it == trace_from_top_.end())
        throw std::invalid_argument("trace target degree must divide 2nd");
    return it->second;
}

const Fe& FieldCtx::omega_pow(u64 i) const { return omega_pow_[i % qn1_]; }

std::optional<u64> FieldCtx::omega_dlog(const Fe& x) const {
    u64 e = encode(x);
    auto it = std::lower_bound(omega_index_.begin(), omega_index_.end(),
                               std::make_pair(e, u32(0)));
    if (it == omega_index_.end() || it->first != e) return std::nullopt;
    return it->second;
}

u64 FieldCtx::elt_mult_order(const Fe& a) const {
    if (is_zero(a)) throw std::domain_error("order of zero");
    u64 ord = order_;
    for (const auto& [r, e] : order_factors_) {
        for (int i = 0; i < e; ++i) {
            if (ord % r == 0 && pow(a, ord / r) == one_)
                ord /= r;
            else
                break;
        }
    }
    return ord;
}

const std::vector<Fe>& FieldCtx::fq2_units() const {
    if (fq2_units_.empty())
        throw BudgetError("F_{q^2} unit list not materialized at this size");
    return fq2_units_;
}

Fe FieldCtx::embed_root(const std::vector<u32>& minpoly) const {
    if (minpoly.size() < 2) throw std::invalid_argument("minpoly must be nonconstant");
    const u32 e = static_cast<u32>(minpoly.size()) - 1;
    if (deg_ % e != 0)
        throw std::invalid_argument("minpoly degree does not divide 2nd");
    if (minpoly.back() % par_.p != 1)
        throw std::invalid_argument("minpoly must be monic");
    u64 sub_size = checked_pow_u64(par_.p, e, u64(1) << 62);
    if (sub_size > (u64(1) << 22))
        throw BudgetError("root search subfield too large");

    std::vector<Fe> coeff(minpoly.size());
    for (size_t i = 0; i < minpoly.size(); ++i) coeff[i] = from_int(minpoly[i]);
    auto eval = [&](const Fe& z) {
        Fe acc = coeff[e];
        for (u32 i = e; i-- > 0;) acc = add(mul(acc, z), coeff[i]);
        return is_zero(acc);
    };

    std::vector<Fe> roots;
    if (eval(zero_)) roots.push_back(zero_);
    Fe h = subfield_generator(e), z = one_;
    for (u64 t = 0; t < sub_size - 1; ++t) {
        if (eval(z)) roots.push_back(z);
        z = mul(z, h);
    }
    if (roots.empty()) throw std::domain_error("minpoly has no root in the field");
    if (roots.size() != e)
        throw std::domain_error("minpoly is not irreducible over F_p");

    Fe best = roots[0];
    u64 best_enc = encode(best);
    for (const Fe& r : roots) {
        if (encode(r) < best_enc) {
            best = r;
            best_enc = encode(r);
        }
    }
    // the e roots must be one Frobenius orbit
    std::vector<u64> encs;
    Fe conj = best;
    for (u32 i = 0; i < e; ++i) {
        encs.push_back(encode(conj));
        conj = frobenius(conj, 1);
    }
    if (!(conj == best)) throw std::domain_error("minpoly is not irreducible over F_p");
    std::sort(encs.begin(), encs.end());
    std::vector<u64> root_encs;
    for (const Fe& r : roots) root_encs.push_back(encode(r));
    std::sort(root_encs.begin(), root_encs.end());
    if (encs != root_encs) throw std::domain_error("minpoly is not irreducible over F_p");
    return best;
}

CosetDecomposition FieldCtx::coset_decompose(const Fe& x) const {
    if (is_zero(x)) throw std::invalid_argument("cannot decompose zero");
    const u64 M = qn1_;
    const u64 t = omega_dlog(pow(x, M - 2)).value();  // x^{q^n-1} lies in <omega>
    const u32 nd = deg_ / 2;
    CosetDecomposition out;
    if (par_.p == 2) {
        // M odd: -2i = t (mod M) has the unique solution below
        u64 inv2 = (M + 1) / 2;
        out.i = mulmod_u64((M - t) % M, inv2, M);
        out.eps = 0;
        out.f = mul(x, omega_pow((M - out.i) % M));
    } else {
        const u64 Mp = (M - 2) / (q() - 1);  // (q^n-1)/(q-1), odd
        bool solved = false;
        for (int eps = 0; eps < 2 && !solved; ++eps) {
            u64 r = (t + M - mulmod_u64(eps, Mp % M, M)) % M;
            if (r % 2 != 0) continue;
            u64 c = (M - r) % M;  // 2i = c (mod M), both even
            u64 i1 = c / 2, i2 = (c / 2 + M / 2) % M;
            out.i = std::min(i1, i2);
            out.eps = eps;
            out.f = mul(x, omega_pow((M - out.i) % M));
            if (eps) out.f = mul(out.f, inv(omega0_));
            solved = true;
        }
        if (!solved) throw std::logic_error("coset decomposition failed");
    }
    if (!in_subfield(out.f, nd))
        throw std::logic_error("coset decomposition left the F_{q^n} part");
    return out;
}

FieldCtx FieldCtx::build(const Params& params, const CtxOptions& opt) {
    params.validate();
    FieldCtx ctx;
    ctx.par_ = params;
    ctx.deg_ = params.deg();
    ctx.q_ = params.q();
    ctx.qn1_ = params.qn_plus_1();
    const u32 p = params.p, deg = ctx.deg_;
    ctx.order_ = checked_pow_u64(p, deg, u64(1) << 62) - 1;
    ctx.order_factors_ = factorize_u64(ctx.order_);

    // Lexicographically least monic primitive polynomial of degree 2nd.
    // The constant term of a primitive polynomial of even degree is the norm
    // of its root, a primitive root mod p, so only those c_0 can occur; the
    // restriction keeps the lex order among primitive candidates intact.
    {
        std::vector<u8> c0_values;
        auto pm1_factors = factorize_u64(p - 1);
        for (u32 r = 1; r < p; ++r)
            if (order_mod(r, p, p - 1, pm1_factors) == p - 1)
                c0_values.push_back(static_cast<u8>(r));
        bool found = false;
        Poly f(deg + 1, 0);
        for (u8 c0 : c0_values) {
            f.assign(deg + 1, 0);
            f[deg] = 1;
            f[0] = c0;
            for (;;) {
                if (is_primitive(f, p, ctx.order_, ctx.order_factors_)) {
                    found = true;
                    break;
                }
                // lexicographic successor on (c_1, ..., c_{deg-1}), last fastest
                int i = static_cast<int>(deg) - 1;
                while (i >= 1 && f[i] == p - 1) {
                    f[i] = 0;
                    --i;
                }
                if (i < 1) break;
                ++f[i];
            }
            if (found) break;
        }
        if (!found) throw std::logic_error("no primitive polynomial found");
        ctx.modulus_.assign(f.begin(), f.end());
    }

    ctx.zero_ = Fe{};
    ctx.one_ = ctx.from_int(1);
    ctx.g_ = Fe{};
    if (deg == 1) {
        ctx.g_.c[0] = static_cast<u8>((p - ctx.modulus_[0]) % p);
    } else {
        ctx.g_.c[1] = 1;
    }

    // Frobenius matrices F^i, columns = (basis_j)^{p^i}
    {
        ctx.frob_.resize(deg);
        ctx.frob_[0] = FpMatrix::identity(deg);
        FpMatrix f1;
        f1.n = deg;
        f1.a.assign(size_t(deg) * deg, 0);
        Fe xp = ctx.pow(ctx.g_, p);  // zech not built yet: poly path
        Fe col = ctx.one_;
        for (u32 j = 0; j < deg; ++j) {
            for (u32 r = 0; r < deg; ++r) f1.at(r, j) = col.c[r];
            col = ctx.mul_poly(col, xp);
        }
        ctx.frob_[1] = f1;
        for (u32 i = 2; i < deg; ++i) ctx.frob_[i] = f1.mul(ctx.frob_[i - 1], p);
    }

    // full-field trace matrices onto each subfield degree
    for (u32 dst = 1; dst <= deg; ++dst) {
        if (deg % dst) continue;
        FpMatrix t;
        t.n = deg;
        t.a.assign(size_t(deg) * deg, 0);
        for (u32 i = 0; i < deg / dst; ++i) {
            const FpMatrix& f = ctx.frob_[(u64(dst) * i) % deg];
            for (size_t k = 0; k < t.a.size(); ++k)
                t.a[k] = static_cast<u8>((t.a[k] + f.a[k]) % p);
        }
        ctx.trace_from_top_.emplace(dst, std::move(t));
    }

    const u64 K = ctx.qn1_ * (ctx.q_ - 1);
    ctx.omega0_ = ctx.pow(ctx.g_, ctx.order_ / K);
    ctx.omega_ = ctx.pow(ctx.omega0_, ctx.q_ - 1);

    ctx.omega_pow_.reserve(ctx.qn1_);
    ctx.omega_index_.reserve(ctx.qn1_);
    {
        Fe w = ctx.one_;
        for (u64 i = 0; i < ctx.qn1_; ++i) {
            ctx.omega_pow_.push_back(w);
            ctx.omega_index_.emplace_back(ctx.encode(w), static_cast<u32>(i));
            w = ctx.mul_poly(w, ctx.omega_);
        }
        std::sort(ctx.omega_index_.begin(), ctx.omega_index_.end());
    }

    ctx.p_mod_qn1_.resize(deg);
    ctx.p_mod_qn1_[0] = 1 % ctx.qn1_;
    for (u32 i = 1; i < deg; ++i)
        ctx.p_mod_qn1_[i] = mulmod_u64(ctx.p_mod_qn1_[i - 1], p, ctx.qn1_);

    // F_{q^2}^* list for canonicalization of <(0,x)> points
    {
        u64 sz = checked_pow_u64(p, 2 * params.d, u64(1) << 62);
        if (sz <= (u64(1) << 20)) {
            Fe h = ctx.pow(ctx.g_, ctx.order_ / (sz - 1));
            Fe z = ctx.one_;
            ctx.fq2_units_.reserve(sz - 1);
            for (u64 i = 0; i + 1 < sz; ++i) {
                ctx.fq2_units_.push_back(z);
                z = ctx.mul_poly(z, h);
            }
        }
    }

    // discrete-log tables for small fields
    if (ctx.order_ + 1 < opt.zech_threshold) {
        ctx.zech_antilog_.resize(ctx.order_);
        ctx.zech_log_.assign(ctx.order_ + 1, static_cast<u32>(ctx.order_));
        Fe z = ctx.one_;
        for (u64 i = 0; i < ctx.order_; ++i) {
            u64 e = ctx.encode(z);
            ctx.zech_antilog_[i] = e;
            ctx.zech_log_[e] = static_cast<u32>(i);
            z = ctx.mul_poly(z, ctx.g_);
        }
    }
    return ctx;
}

std::string fe_to_string(const FieldCtx& ctx, const Fe& a) {
    std::string s = "[";
    for (u32 i = 0; i < ctx.deg(); ++i) {
        if (i) s += ',';
        s += std::to_string(a.c[i]);
    }
    s += ']';
    return s;
}

}  // namespace hermovd
