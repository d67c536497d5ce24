#include "hermovd/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace hermovd {

ProjPoint canonicalize(const FieldCtx& ctx, const Fe& a, const Fe& x) {
    if (ctx.is_zero(a) && ctx.is_zero(x))
        throw std::invalid_argument("(0,0) is not a projective point");
    ProjPoint P;
    if (!ctx.is_zero(a)) {
        Fe ai = ctx.inv(a);
        P.a = ctx.one();
        P.x = ctx.mul(x, ai);
        return P;
    }
    P.a = ctx.zero();
    P.x = x;
    u64 best = ctx.encode(x);
    for (const Fe& lam : ctx.fq2_units()) {
        Fe cand = ctx.mul(x, lam);
        u64 e = ctx.encode(cand);
        if (e < best) {
            best = e;
            P.x = cand;
        }
    }
    return P;
}

PointKey point_key(const FieldCtx& ctx, const ProjPoint& P) {
    return {ctx.encode(P.a), ctx.encode(P.x)};
}

bool point_less(const FieldCtx& ctx, const ProjPoint& A, const ProjPoint& B) {
    return point_key(ctx, A) < point_key(ctx, B);
}

Fe herm_value(const FieldCtx& ctx, const Fe& a, const Fe& x) {
    const u32 nd = ctx.deg() / 2;
    Fe norm_a = ctx.mul(a, ctx.pow(a, ctx.q()));
    Fe xq = ctx.mul(x, ctx.frobenius(x, nd));  // x^{q^n+1}
    return ctx.sub(norm_a, ctx.trace_matrix(2 * ctx.params().d).apply(xq, ctx.p()));
}

Fe herm_pair(const FieldCtx& ctx, const Fe& a, const Fe& x, const Fe& b,
             const Fe& y) {
    const u32 nd = ctx.deg() / 2;
    Fe lhs = ctx.mul(a, ctx.pow(b, ctx.q()));
    Fe cross = ctx.mul(x, ctx.frobenius(y, nd));
    return ctx.sub(lhs, ctx.trace_matrix(2 * ctx.params().d).apply(cross, ctx.p()));
}

bool is_singular(const FieldCtx& ctx, const ProjPoint& P) {
    return ctx.is_zero(herm_value(ctx, P));
}

bool perp(const FieldCtx& ctx, const ProjPoint& P, const ProjPoint& Q) {
    return ctx.is_zero(herm_pair(ctx, P, Q));
}

std::vector<ProjPoint> all_projective_points(const FieldCtx& ctx) {
    const u64 field_size = ctx.order() + 1;
    if (field_size > (u64(1) << 24))
        throw BudgetError("point enumeration budget exceeded");
    std::vector<ProjPoint> pts;
    const u64 q2 = checked_pow_u64(ctx.p(), 2 * ctx.params().d, u64(1) << 62);
    pts.reserve(field_size + (field_size - 1) / (q2 - 1));
    ProjPoint P;
    P.a = ctx.one();
    for (u64 e = 0; e < field_size; ++e) {
        P.x = ctx.decode(e);
        pts.push_back(P);
    }
    // coset representatives g^e of F^* / F_{q^2}^*
    const u64 reps = ctx.order() / (q2 - 1);
    Fe x = ctx.one();
    for (u64 e = 0; e < reps; ++e) {
        pts.push_back(canonicalize(ctx, ctx.zero(), x));
        x = ctx.mul(x, ctx.g());
    }
    return pts;
}

std::vector<ProjPoint> all_singular_points(const FieldCtx& ctx) {
    std::vector<ProjPoint> out;
    for (const ProjPoint& P : all_projective_points(ctx))
        if (is_singular(ctx, P)) out.push_back(P);
    std::sort(out.begin(), out.end(), [&](const ProjPoint& A, const ProjPoint& B) {
        return point_less(ctx, A, B);
    });
    return out;
}

std::vector<ProjPoint> classical_ovoid(const FieldCtx& ctx, const ProjPoint& P) {
    if (ctx.params().n != 3)
        throw std::invalid_argument("classical ovoids are built for n = 3 only");
    if (is_singular(ctx, P))
        throw std::invalid_argument("classical ovoid needs a nonsingular point");
    std::vector<ProjPoint> out;
    if (P.a == ctx.one() && ctx.is_zero(P.x)) {
        // P^perp = {<(0,x)>}; scan one representative per F_{q^2}^* coset
        const u64 q2 = checked_pow_u64(ctx.p(), 2 * ctx.params().d, u64(1) << 62);
        const u64 reps = ctx.order() / (q2 - 1);
        Fe x = ctx.one();
        for (u64 e = 0; e < reps; ++e) {
            ProjPoint Q{ctx.zero(), x};
            if (is_singular(ctx, Q)) out.push_back(canonicalize(ctx, Q.a, Q.x));
            x = ctx.mul(x, ctx.g());
        }
    } else {
        for (const ProjPoint& Q : all_singular_points(ctx))
            if (perp(ctx, P, Q)) out.push_back(Q);
    }
    std::sort(out.begin(), out.end(), [&](const ProjPoint& A, const ProjPoint& B) {
        return point_less(ctx, A, B);
    });
    return out;
}

namespace {

// vector-space ops on V = F_{q^2} x F_{q^{2n}}
struct Vec {
    Fe a, x;
};

Vec vadd(const FieldCtx& ctx, const Vec& u, const Vec& v) {
    return {ctx.add(u.a, v.a), ctx.add(u.x, v.x)};
}

Vec vscale(const FieldCtx& ctx, const Fe& lam, const Vec& u) {
    return {ctx.mul(lam, u.a), ctx.mul(lam, u.x)};
}

}  // namespace

ProjLine line_through(const FieldCtx& ctx, const ProjPoint& P, const ProjPoint& Q) {
    if (ctx.params().n != 3)
        throw std::invalid_argument("lines are supported for n = 3 only");
    if (P == Q) throw std::invalid_argument("line needs two distinct points");
    ProjLine line;
    line.p0 = P;
    line.p1 = Q;
    line.points.push_back(canonicalize(ctx, Q.a, Q.x));
    Vec vp{P.a, P.x}, vq{Q.a, Q.x};
    for (const Fe& lam : ctx.fq2_units()) {
        Vec v = vadd(ctx, vp, vscale(ctx, lam, vq));
        line.points.push_back(canonicalize(ctx, v.a, v.x));
    }
    line.points.push_back(canonicalize(ctx, P.a, P.x));
    std::sort(line.points.begin(), line.points.end(),
              [&](const ProjPoint& A, const ProjPoint& B) { return point_less(ctx, A, B); });
    line.points.erase(std::unique(line.points.begin(), line.points.end()),
                      line.points.end());
    const u64 q2 = checked_pow_u64(ctx.p(), 2 * ctx.params().d, u64(1) << 62);
    if (line.points.size() != q2 + 1)
        throw std::logic_error("projective line has the wrong point count");
    return line;
}

ProjLine line_perp(const FieldCtx& ctx, const ProjLine& line) {
    if (ctx.params().n != 3)
        throw std::invalid_argument("lines are supported for n = 3 only");
    // Solve b(R, p0) = b(R, p1) = 0 for R = c0 (1,0) + sum c_j (0, g^{j-1});
    // b is F_{q^2}-linear in its first slot, so this is a 2x4 kernel over F_{q^2}.
    const u32 m = 4;
    Vec basis[4] = {{ctx.one(), ctx.zero()},
                    {ctx.zero(), ctx.one()},
                    {ctx.zero(), ctx.g()},
                    {ctx.zero(), ctx.mul(ctx.g(), ctx.g())}};
    Fe mat[2][4];
    const ProjPoint* rows[2] = {&line.p0, &line.p1};
    for (u32 r = 0; r < 2; ++r)
        for (u32 c = 0; c < m; ++c)
            mat[r][c] = herm_pair(ctx, basis[c].a, basis[c].x, rows[r]->a, rows[r]->x);

    // Gaussian elimination over F_{q^2}
    u32 pivot_col[2] = {m, m};
    u32 rank = 0;
    for (u32 c = 0; c < m && rank < 2; ++c) {
        u32 pr = rank;
        while (pr < 2 && ctx.is_zero(mat[pr][c])) ++pr;
        if (pr == 2) continue;
        std::swap(mat[pr], mat[rank]);
        Fe invp = ctx.inv(mat[rank][c]);
        for (u32 cc = 0; cc < m; ++cc) mat[rank][cc] = ctx.mul(mat[rank][cc], invp);
        for (u32 r = 0; r < 2; ++r) {
            if (r == rank || ctx.is_zero(mat[r][c])) continue;
            Fe f = mat[r][c];
            for (u32 cc = 0; cc < m; ++cc)
                mat[r][cc] = ctx.sub(mat[r][cc], ctx.mul(f, mat[rank][cc]));
        }
        pivot_col[rank++] = c;
    }
    if (rank != 2) throw std::logic_error("degenerate line in line_perp");

    // kernel basis: one vector per free column
    std::vector<Vec> kernel;
    for (u32 c = 0; c < m; ++c) {
        if (c == pivot_col[0] || c == pivot_col[1]) continue;
        Fe coef[4];
        for (u32 i = 0; i < m; ++i) coef[i] = ctx.zero();
        coef[c] = ctx.one();
        for (u32 r = 0; r < rank; ++r)
            coef[pivot_col[r]] = ctx.neg(mat[r][c]);
        Vec v{ctx.zero(), ctx.zero()};
        for (u32 i = 0; i < m; ++i)
            v = vadd(ctx, v, vscale(ctx, coef[i], basis[i]));
        kernel.push_back(v);
    }
    if (kernel.size() != 2) throw std::logic_error("perp of a line is not a line");
    return line_through(ctx, canonicalize(ctx, kernel[0].a, kernel[0].x),
                        canonicalize(ctx, kernel[1].a, kernel[1].x));
}

std::vector<ProjPoint> singular_points_on_line(const FieldCtx& ctx,
                                               const ProjLine& line) {
    std::vector<ProjPoint> out;
    for (const ProjPoint& P : line.points)
        if (is_singular(ctx, P)) out.push_back(P);
    return out;
}

}  // namespace hermovd
