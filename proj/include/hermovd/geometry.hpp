#pragma once

#include <utility>
#include <vector>

#include "hermovd/gf.hpp"

namespace hermovd {

// The Hermitian polar space H(n,q^2) on V = F_{q^2} x F_{q^{2n}}, with the
// norm form h((a,x)) = a^{q+1} - Tr_{F_{q^{2n}}/F_{q^2}}(x^{q^n+1}) and its
// polarization b((a,x),(b,y)) = a b^q - Tr(x y^{q^n}).

// Canonical projective point <(a,x)>: a = 1 when a != 0, otherwise x is the
// F_{q^2}^*-multiple with least integer encoding.
struct ProjPoint {
    Fe a, x;
    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

using PointKey = std::pair<u64, u64>;

ProjPoint canonicalize(const FieldCtx& ctx, const Fe& a, const Fe& x);
PointKey point_key(const FieldCtx& ctx, const ProjPoint& P);
bool point_less(const FieldCtx& ctx, const ProjPoint& A, const ProjPoint& B);

Fe herm_value(const FieldCtx& ctx, const Fe& a, const Fe& x);
inline Fe herm_value(const FieldCtx& ctx, const ProjPoint& P) {
    return herm_value(ctx, P.a, P.x);
}

Fe herm_pair(const FieldCtx& ctx, const Fe& a, const Fe& x, const Fe& b,
             const Fe& y);
inline Fe herm_pair(const FieldCtx& ctx, const ProjPoint& P, const ProjPoint& Q) {
    return herm_pair(ctx, P.a, P.x, Q.a, Q.x);
}

bool is_singular(const FieldCtx& ctx, const ProjPoint& P);
bool perp(const FieldCtx& ctx, const ProjPoint& P, const ProjPoint& Q);

// All projective points / all singular points of H(n,q^2); intended for
// small parameter sets, guarded by an enumeration budget.
std::vector<ProjPoint> all_projective_points(const FieldCtx& ctx);
std::vector<ProjPoint> all_singular_points(const FieldCtx& ctx);

// Singular points of P^perp for nonsingular P (n = 3): the classical ovoid.
std::vector<ProjPoint> classical_ovoid(const FieldCtx& ctx, const ProjPoint& P);

// Lines of PG(3,q^2); only the n = 3 case is supported.
struct ProjLine {
    ProjPoint p0, p1;                // spanning points
    std::vector<ProjPoint> points;   // all q^2+1 points, canonical sorted
};

ProjLine line_through(const FieldCtx& ctx, const ProjPoint& P, const ProjPoint& Q);
ProjLine line_perp(const FieldCtx& ctx, const ProjLine& line);
std::vector<ProjPoint> singular_points_on_line(const FieldCtx& ctx,
                                               const ProjLine& line);

}  // namespace hermovd
