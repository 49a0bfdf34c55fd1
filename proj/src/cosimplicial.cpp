#include "pdcrystal/cosimplicial.hpp"

#include <functional>

namespace pdcrystal {

const char* flavor_name(FlavorKind k) {
    switch (k) {
        case FlavorKind::RelativeSmooth: return "relative-smooth";
        case FlavorKind::RelativeLog: return "relative-log";
        case FlavorKind::AbsoluteSmooth: return "absolute-smooth";
        case FlavorKind::AbsoluteLog: return "absolute-log";
        case FlavorKind::ArithmeticPoint: return "arithmetic-point";
    }
    throw Error("flavor_name: bad kind");
}

FlavorKind flavor_from_name(const std::string& s) {
    for (FlavorKind k : {FlavorKind::RelativeSmooth, FlavorKind::RelativeLog,
                         FlavorKind::AbsoluteSmooth, FlavorKind::AbsoluteLog,
                         FlavorKind::ArithmeticPoint})
        if (s == flavor_name(k)) return k;
    throw ParseError("unknown flavor: " + s);
}

Flavor relative_smooth(int d, TruncatedSeries beta) {
    Flavor f{FlavorKind::RelativeSmooth, d, Rational(0), std::move(beta)};
    validate_flavor(f);
    return f;
}

Flavor relative_log(int d, int m) {
    Flavor f{FlavorKind::RelativeLog, d, Rational(0), ts_eps(m)};
    validate_flavor(f);
    return f;
}

Flavor absolute_smooth(int d, const Rational& a) {
    Flavor f{FlavorKind::AbsoluteSmooth, d, a, TruncatedSeries(1)};
    validate_flavor(f);
    return f;
}

Flavor absolute_log(int d, const Rational& a) {
    Flavor f{FlavorKind::AbsoluteLog, d, a, TruncatedSeries(1)};
    validate_flavor(f);
    return f;
}

Flavor arithmetic_point(const Rational& a) {
    Flavor f{FlavorKind::ArithmeticPoint, 0, a, TruncatedSeries(1)};
    validate_flavor(f);
    return f;
}

void validate_flavor(const Flavor& f) {
    if (f.kind == FlavorKind::ArithmeticPoint) {
        if (f.d != 0) throw Error("arithmetic-point flavor requires d = 0");
        return;
    }
    if (f.d < 1) throw Error("flavor requires d >= 1");
    if (flavor_is_relative(f.kind)) {
        if (!f.beta.c.empty() && f.beta.c[0] != 0)
            throw Error("relative twist series must have zero constant term");
        if (f.kind == FlavorKind::RelativeLog && !(f.beta == ts_eps(f.beta.m)))
            throw Error("relative-log flavor forces beta = eps");
    }
}

TruncatedSeries flavor_beta(const Flavor& f, int m) {
    if (f.kind == FlavorKind::ArithmeticPoint)
        throw Error("flavor_beta: arithmetic point has no geometric direction");
    if (flavor_is_absolute(f.kind)) return ts_eps(m);
    TruncatedSeries out(m);
    for (int k = 0; k < m && k < f.beta.m; ++k) out.c[k] = f.beta.c[k];
    return out;
}

int NerveLayout::x_index(int j) const {
    if (!has_x() || j < 1 || j > level) throw Error("NerveLayout: bad X index");
    return j - 1;
}

int NerveLayout::y_index(int s, int j) const {
    if (s < 1 || s > d || j < 1 || j > level) throw Error("NerveLayout: bad Y index");
    return (has_x() ? level : 0) + (s - 1) * level + (j - 1);
}

PDRingPtr nerve_ring(const Flavor& f, int level, int bound, int m) {
    validate_flavor(f);
    if (level < 0) throw Error("nerve_ring: level must be >= 0");
    NerveLayout lay{f.kind, f.d, level};
    std::vector<std::string> vars(static_cast<size_t>(lay.var_count()));
    for (int j = 1; j <= level; ++j) {
        if (lay.has_x()) vars[static_cast<size_t>(lay.x_index(j))] = "X" + std::to_string(j);
        for (int s = 1; s <= f.d; ++s)
            vars[static_cast<size_t>(lay.y_index(s, j))] =
                "Y" + std::to_string(s) + "_" + std::to_string(j);
    }
    return pd_ring(std::move(vars), bound, m);
}

static void build_caches(RingHom& h) {
    int bound = h.target->bound;
    h.dp.resize(h.var_images.size());
    for (size_t v = 0; v < h.var_images.size(); ++v) {
        auto& col = h.dp[v];
        col.reserve(static_cast<size_t>(bound) + 1);
        col.push_back(pd_one(h.target));
        for (int k = 1; k <= bound; ++k)
            col.push_back(pd_scale(Rational(1, k), pd_mul(col.back(), h.var_images[v])));
    }
    if (!h.e_fixed) {
        h.e_pows.reserve(static_cast<size_t>(h.target->m));
        h.e_pows.push_back(pd_one(h.target));
        for (int k = 1; k < h.target->m; ++k)
            h.e_pows.push_back(pd_mul(h.e_pows.back(), h.e_image));
    }
}

RingHom make_hom(PDRingPtr source, PDRingPtr target, std::vector<PDElement> var_images) {
    if (static_cast<int>(var_images.size()) != static_cast<int>(source->vars.size()))
        throw Error("make_hom: one image per source variable required");
    for (const auto& img : var_images) {
        if (!(img.rows == 1 && img.cols == 1)) throw Error("make_hom: images must be scalar");
        if (pd_has_constant_term(img))
            throw Error("make_hom: variable images must have zero constant term");
        if (!(*img.ring == *target)) throw Error("make_hom: image in wrong ring");
    }
    RingHom h;
    h.source = std::move(source);
    h.target = std::move(target);
    h.var_images = std::move(var_images);
    h.e_fixed = true;
    if (h.source->m != h.target->m) throw TruncationMismatch("make_hom: source/target m differ");
    build_caches(h);
    return h;
}

RingHom make_hom(PDRingPtr source, PDRingPtr target, std::vector<PDElement> var_images,
                 PDElement e_image) {
    RingHom h = make_hom(std::move(source), std::move(target), std::move(var_images));
    if (!(e_image.rows == 1 && e_image.cols == 1))
        throw Error("make_hom: eps image must be scalar");
    if (!(*e_image.ring == *h.target)) throw Error("make_hom: eps image in wrong ring");
    h.e_fixed = false;
    h.e_image = std::move(e_image);
    build_caches(h);
    return h;
}

// sum_k c_k * e_image^k for the coefficient c = sum_k c_k eps^k (c_k rational matrices).
static PDElement embed_coeff(const RingHom& h, const SeriesMat& c) {
    if (h.e_fixed) return pd_const(h.target, c);
    int m = h.target->m;
    PDElement acc = pd_zero(h.target, c.rows, c.cols);
    for (int k = 0; k < m; ++k) {
        SeriesMat ck(c.rows, c.cols, TruncatedSeries(m));
        bool nonzero = false;
        for (int i = 0; i < c.rows; ++i)
            for (int j = 0; j < c.cols; ++j) {
                const Rational& v = c.at(i, j).c[static_cast<size_t>(k)];
                if (v != 0) {
                    ck.at(i, j).c[0] = v;
                    nonzero = true;
                }
            }
        if (!nonzero) continue;
        acc = pd_add(acc, pd_mul(pd_const(h.target, ck), h.e_pows[static_cast<size_t>(k)]));
    }
    return acc;
}

PDElement hom_apply(const RingHom& h, const PDElement& x) {
    if (!(*x.ring == *h.source)) throw Error("hom_apply: element not in source ring");
    PDElement acc = pd_zero(h.target, x.rows, x.cols);
    for (const auto& [e, c] : x.terms) {
        PDElement mono = pd_one(h.target);
        bool dead = false;
        for (size_t v = 0; v < e.size() && !dead; ++v) {
            if (!e[v]) continue;
            mono = pd_mul(mono, h.dp[v][static_cast<size_t>(e[v])]);
            dead = pd_is_zero(mono);
        }
        if (dead) continue;
        acc = pd_add(acc, pd_mul(embed_coeff(h, c), mono));
    }
    return acc;
}

RingHom face(const Flavor& f, int from_level, int i, int bound, int m) {
    if (i < 0 || i > from_level + 1) throw Error("face: index out of range");
    auto src = nerve_ring(f, from_level, bound, m);
    auto tgt = nerve_ring(f, from_level + 1, bound, m);
    NerveLayout sl{f.kind, f.d, from_level}, tl{f.kind, f.d, from_level + 1};
    auto X = [&](int j) { return pd_var(tgt, tl.x_index(j)); };
    auto Y = [&](int s, int j) { return pd_var(tgt, tl.y_index(s, j)); };

    PDElement inv_unit_x;  // (1 + a X_1)^{-1}
    bool moves_e = (i == 0) && flavor_is_absolute(f.kind);
    if (moves_e) inv_unit_x = pd_inv_one_plus(pd_scale(f.a, X(1)));

    std::vector<PDElement> images(static_cast<size_t>(sl.var_count()));
    for (int j = 1; j <= from_level; ++j) {
        if (sl.has_x()) {
            PDElement img;
            if (i == 0)
                img = pd_mul(pd_sub(X(j + 1), X(1)), inv_unit_x);
            else
                img = (j < i) ? X(j) : X(j + 1);
            images[static_cast<size_t>(sl.x_index(j))] = std::move(img);
        }
        for (int s = 1; s <= f.d; ++s) {
            PDElement img;
            if (i == 0) {
                PDElement diff = pd_sub(Y(s, j + 1), Y(s, 1));
                PDElement twist =
                    pd_inv_one_plus(pd_scale(ts_neg(flavor_beta(f, m)), Y(s, 1)));
                img = flavor_is_relative(f.kind)
                          ? pd_mul(diff, twist)
                          : pd_mul(pd_mul(diff, inv_unit_x), twist);
            } else {
                img = (j < i) ? Y(s, j) : Y(s, j + 1);
            }
            images[static_cast<size_t>(sl.y_index(s, j))] = std::move(img);
        }
    }
    if (moves_e) {
        PDElement e_img = pd_add(pd_const(tgt, ts_eps(m)), pd_scale(ts_scale(f.a, ts_eps(m)), X(1)));
        return make_hom(std::move(src), std::move(tgt), std::move(images), std::move(e_img));
    }
    return make_hom(std::move(src), std::move(tgt), std::move(images));
}

RingHom degeneracy(const Flavor& f, int from_level, int i, int bound, int m) {
    if (from_level < 1 || i < 0 || i > from_level - 1)
        throw Error("degeneracy: index out of range");
    auto src = nerve_ring(f, from_level, bound, m);
    auto tgt = nerve_ring(f, from_level - 1, bound, m);
    NerveLayout sl{f.kind, f.d, from_level}, tl{f.kind, f.d, from_level - 1};
    std::vector<PDElement> images(static_cast<size_t>(sl.var_count()));
    // copies i and i+1 merge: V_j for j <= i, V_{j-1} for j > i, with V_0 = 0.
    auto shift = [&](int j, auto var_at) {
        if (j <= i) return var_at(j);
        if (j == 1) return pd_zero(tgt);
        return var_at(j - 1);
    };
    for (int j = 1; j <= from_level; ++j) {
        if (sl.has_x())
            images[static_cast<size_t>(sl.x_index(j))] =
                shift(j, [&](int jj) { return pd_var(tgt, tl.x_index(jj)); });
        for (int s = 1; s <= f.d; ++s)
            images[static_cast<size_t>(sl.y_index(s, j))] =
                shift(j, [&](int jj) { return pd_var(tgt, tl.y_index(s, jj)); });
    }
    return make_hom(std::move(src), std::move(tgt), std::move(images));
}

using HomFn = std::function<PDElement(const PDElement&)>;

static bool agree_on_generators(const HomFn& lhs, const HomFn& rhs, const PDRingPtr& src,
                                std::string& witness) {
    for (size_t v = 0; v < src->vars.size(); ++v) {
        PDElement l = lhs(pd_var(src, static_cast<int>(v)));
        PDElement r = rhs(pd_var(src, static_cast<int>(v)));
        if (!(l == r)) {
            witness = "on " + src->vars[v] + ": " + pd_first_difference(l, r);
            return false;
        }
    }
    PDElement e = pd_const(src, ts_eps(src->m));
    PDElement l = lhs(e), r = rhs(e);
    if (!(l == r)) {
        witness = "on eps: " + pd_first_difference(l, r);
        return false;
    }
    return true;
}

CheckResult check_simplicial_identities(const Flavor& f, int degree) {
    Timer timer;
    CheckResult res;
    res.name = std::string("simplicial-identities(") + flavor_name(f.kind) +
               ", degree=" + std::to_string(degree) + ")";
    int m = degree + 1;
    Flavor fl = f;
    if (fl.kind == FlavorKind::RelativeLog)
        fl.beta = ts_eps(m);
    else if (flavor_is_relative(fl.kind))
        fl.beta = flavor_beta(f, m);

    auto fail = [&](const std::string& what, const std::string& wit) {
        res.status = CheckStatus::Fail;
        res.witness = what + " " + wit;
        res.ms = timer.ms();
        return res;
    };

    // All maps built once: fc[lvl][i] : N^lvl -> N^{lvl+1}; dg[lvl][i] : N^lvl -> N^{lvl-1}.
    std::vector<std::vector<RingHom>> fc(3), dg(4);
    for (int lvl = 0; lvl <= 2; ++lvl)
        for (int i = 0; i <= lvl + 1; ++i) fc[static_cast<size_t>(lvl)].push_back(face(fl, lvl, i, degree, m));
    for (int lvl = 1; lvl <= 3; ++lvl)
        for (int i = 0; i <= lvl - 1; ++i)
            dg[static_cast<size_t>(lvl)].push_back(degeneracy(fl, lvl, i, degree, m));

    // p_j p_i = p_i p_{j-1}, i < j, from base levels 0 and 1.
    for (int base = 0; base <= 1; ++base) {
        auto src = nerve_ring(fl, base, degree, m);
        for (int i = 0; i <= base + 1; ++i)
            for (int j = i + 1; j <= base + 2; ++j) {
                const RingHom& pi = fc[base][static_cast<size_t>(i)];
                const RingHom& pj = fc[base + 1][static_cast<size_t>(j)];
                const RingHom& pjm1 = fc[base][static_cast<size_t>(j - 1)];
                const RingHom& pi2 = fc[base + 1][static_cast<size_t>(i)];
                std::string wit;
                HomFn l = [&](const PDElement& x) { return hom_apply(pj, hom_apply(pi, x)); };
                HomFn r = [&](const PDElement& x) { return hom_apply(pi2, hom_apply(pjm1, x)); };
                if (!agree_on_generators(l, r, src, wit))
                    return fail("p" + std::to_string(j) + "∘p" + std::to_string(i) +
                                    " != p" + std::to_string(i) + "∘p" + std::to_string(j - 1) +
                                    " from level " + std::to_string(base),
                                wit);
            }
    }

    // sigma_j p_i at levels 0..2: identity when i = j or i = j+1, exchange laws otherwise.
    for (int lvl = 0; lvl <= 2; ++lvl) {
        auto src = nerve_ring(fl, lvl, degree, m);
        for (int i = 0; i <= lvl + 1; ++i)
            for (int j = 0; j <= lvl; ++j) {
                const RingHom& pi = fc[lvl][static_cast<size_t>(i)];
                const RingHom& sj = dg[lvl + 1][static_cast<size_t>(j)];
                HomFn l = [&](const PDElement& x) { return hom_apply(sj, hom_apply(pi, x)); };
                HomFn r;
                if (i == j || i == j + 1) {
                    r = [](const PDElement& x) { return x; };
                } else if (i < j) {
                    const RingHom& ra = dg[lvl][static_cast<size_t>(j - 1)];
                    const RingHom& rb = fc[lvl - 1][static_cast<size_t>(i)];
                    r = [&ra, &rb](const PDElement& x) { return hom_apply(rb, hom_apply(ra, x)); };
                } else {  // i > j + 1
                    const RingHom& ra = dg[lvl][static_cast<size_t>(j)];
                    const RingHom& rb = fc[lvl - 1][static_cast<size_t>(i - 1)];
                    r = [&ra, &rb](const PDElement& x) { return hom_apply(rb, hom_apply(ra, x)); };
                }
                std::string wit;
                if (!agree_on_generators(l, r, src, wit))
                    return fail("sigma" + std::to_string(j) + "∘p" + std::to_string(i) +
                                    " law at level " + std::to_string(lvl),
                                wit);
            }
    }

    // sigma_j sigma_i = sigma_i sigma_{j+1}, i <= j, down to levels 0 and 1.
    for (int tgt_lvl = 0; tgt_lvl <= 1; ++tgt_lvl) {
        auto src = nerve_ring(fl, tgt_lvl + 2, degree, m);
        for (int j = 0; j <= tgt_lvl; ++j)
            for (int i = 0; i <= j; ++i) {
                const RingHom& si = dg[tgt_lvl + 2][static_cast<size_t>(i)];
                const RingHom& sj = dg[tgt_lvl + 1][static_cast<size_t>(j)];
                const RingHom& sjp1 = dg[tgt_lvl + 2][static_cast<size_t>(j + 1)];
                const RingHom& si2 = dg[tgt_lvl + 1][static_cast<size_t>(i)];
                std::string wit;
                HomFn l = [&](const PDElement& x) { return hom_apply(sj, hom_apply(si, x)); };
                HomFn r = [&](const PDElement& x) { return hom_apply(si2, hom_apply(sjp1, x)); };
                if (!agree_on_generators(l, r, src, wit))
                    return fail("sigma" + std::to_string(j) + "∘sigma" + std::to_string(i) +
                                    " != sigma" + std::to_string(i) + "∘sigma" +
                                    std::to_string(j + 1) + " to level " + std::to_string(tgt_lvl),
                                wit);
            }
    }

    res.ms = timer.ms();
    return res;
}

}  // namespace pdcrystal
