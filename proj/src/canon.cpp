#include "ordtype/canon.hpp"

#include <algorithm>
#include <limits>

#include "ordtype/textio.hpp"

namespace ordtype {

namespace {

// Upper bound on the atoms plus components produced by expanding a finite
// index; beyond it canonicalization reports Stuck instead of allocating.
constexpr std::size_t kExpansionLimit = 4096;

int rank(ScatAtom::Kind k) { return static_cast<int>(k); }

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw Unsupported("finite block size overflows 64 bits");
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
        throw Unsupported("finite block size overflows 64 bits");
    return a * b;
}

bool atoms_tame(const std::vector<ScatAtom>& atoms) {
    return std::none_of(atoms.begin(), atoms.end(),
                        [](const ScatAtom& a) { return a.kind == ScatAtom::Kind::Pow; });
}

std::size_t weight(const CanonicalForm& cf) {
    std::size_t n = 0;
    for (const auto& c : cf.components) n += c.is_shuffle() ? 1 : c.scat.atoms.size();
    return n;
}

std::optional<ScatAtom> merge_atoms(const ScatAtom& x, const ScatAtom& y) {
    using K = ScatAtom::Kind;
    if (x.kind == K::Fin && y.kind == K::Fin) return ScatAtom::fin(checked_add(x.count, y.count));
    if (x.kind == K::Fin && y.kind == K::W) return ScatAtom::w();
    if (x.kind == K::Wstar && y.kind == K::Fin) return ScatAtom::wstar();
    if (x.kind == K::Wstar && y.kind == K::W) return ScatAtom::zat();
    return std::nullopt;
}

std::vector<ScatAtom> join(std::vector<ScatAtom> a, const std::vector<ScatAtom>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

ScatAtom kappa_atom(PowKind k) {
    switch (k) {
        case PowKind::Omega: return ScatAtom::w();
        case PowKind::OmegaStar: return ScatAtom::wstar();
        case PowKind::Zeta: return ScatAtom::zat();
    }
    return ScatAtom::zat();
}

std::vector<ScatAtom> rotate_left(const std::vector<ScatAtom>& b) {
    std::vector<ScatAtom> r(b.begin() + 1, b.end());
    r.push_back(b.front());
    return normalize_scat(std::move(r)).atoms;
}

std::vector<ScatAtom> rotate_right(const std::vector<ScatAtom>& b) {
    std::vector<ScatAtom> r{b.back()};
    r.insert(r.end(), b.begin(), b.end() - 1);
    return normalize_scat(std::move(r)).atoms;
}

// kappa-many copies of a normalized scattered body.
std::vector<ScatAtom> make_pow(PowKind kind, const std::vector<ScatAtom>& body) {
    if (body.empty()) return {};
    if (body.size() == 1 && body.front().kind == ScatAtom::Kind::Fin) return {kappa_atom(kind)};
    if (body.size() >= 2) {
        // N*(b0 + rest) = b0 + N*(rest + b0), and dually; fire only when the
        // rotated body is strictly shorter so the rewrite terminates.
        switch (kind) {
            case PowKind::Omega: {
                auto rot = rotate_left(body);
                if (rot.size() < body.size())
                    return normalize_scat(join({body.front()}, make_pow(kind, rot))).atoms;
                break;
            }
            case PowKind::OmegaStar: {
                auto rot = rotate_right(body);
                if (rot.size() < body.size())
                    return normalize_scat(join(make_pow(kind, rot), {body.back()})).atoms;
                break;
            }
            case PowKind::Zeta: {
                auto rot = rotate_left(body);
                if (rot.size() < body.size()) return make_pow(kind, rot);
                rot = rotate_right(body);
                if (rot.size() < body.size()) return make_pow(kind, rot);
                break;
            }
        }
    }
    return {ScatAtom::power(kind, body)};
}

std::vector<ScatAtom> scat_product(const std::vector<ScatAtom>& index, const std::vector<ScatAtom>& fiber) {
    std::vector<ScatAtom> out;
    for (const auto& a : index) {
        switch (a.kind) {
            case ScatAtom::Kind::Fin:
                if (fiber.size() == 1 && fiber.front().kind == ScatAtom::Kind::Fin) {
                    out.push_back(ScatAtom::fin(checked_mul(a.count, fiber.front().count)));
                } else {
                    if (checked_mul(a.count, fiber.size()) > kExpansionLimit)
                        throw Unsupported("finite index too large to expand");
                    for (std::uint64_t i = 0; i < a.count; ++i) out.insert(out.end(), fiber.begin(), fiber.end());
                }
                break;
            case ScatAtom::Kind::W: out = join(std::move(out), make_pow(PowKind::Omega, fiber)); break;
            case ScatAtom::Kind::Wstar: out = join(std::move(out), make_pow(PowKind::OmegaStar, fiber)); break;
            case ScatAtom::Kind::Zat: out = join(std::move(out), make_pow(PowKind::Zeta, fiber)); break;
            case ScatAtom::Kind::Pow:
                out = join(std::move(out), make_pow(a.pow, scat_product(a.body, fiber)));
                break;
        }
    }
    return normalize_scat(std::move(out)).atoms;
}

void sort_unique(std::vector<CanonicalForm>& blocks) {
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
}

bool compute_tame(const std::vector<Component>& comps) {
    for (const auto& c : comps) {
        if (c.is_shuffle()) {
            for (const auto& b : c.blocks)
                if (!b.tame) return false;
        } else if (!c.scat.tame()) {
            return false;
        }
    }
    return true;
}

CanonicalForm normalize_components(std::vector<Component> cs) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Component> out;
        out.reserve(cs.size());
        for (auto& c : cs) {
            if (!c.is_shuffle() && c.scat.empty()) {
                changed = true;
                continue;
            }
            if (!c.is_shuffle() && !out.empty() && !out.back().is_shuffle()) {
                out.back().scat = normalize_scat(join(std::move(out.back().scat.atoms), c.scat.atoms));
                changed = true;
                continue;
            }
            out.push_back(std::move(c));
        }
        // Shuffle merges, left to right: Q[A] + Q[A] and Q[A] + s + Q[A] with s a block.
        for (std::size_t i = 0; i < out.size();) {
            if (out[i].is_shuffle() && i + 1 < out.size() && out[i + 1].is_shuffle() &&
                out[i].blocks == out[i + 1].blocks) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i + 1));
                changed = true;
                continue;
            }
            if (out[i].is_shuffle() && i + 2 < out.size() && !out[i + 1].is_shuffle() &&
                out[i + 2].is_shuffle() && out[i].blocks == out[i + 2].blocks &&
                has_block(out[i].blocks, from_scat(out[i + 1].scat))) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i + 1),
                          out.begin() + static_cast<std::ptrdiff_t>(i + 3));
                changed = true;
                continue;
            }
            ++i;
        }
        cs = std::move(out);
    }
    CanonicalForm cf;
    cf.tame = compute_tame(cs);
    cf.components = std::move(cs);
    return cf;
}

OrderTerm kappa_term(PowKind k) {
    switch (k) {
        case PowKind::Omega: return OrderTerm::omega();
        case PowKind::OmegaStar: return OrderTerm::omega_star();
        case PowKind::Zeta: return OrderTerm::zeta();
    }
    return OrderTerm::zeta();
}

struct ShuffleShape {
    CanonicalForm left;
    std::vector<CanonicalForm> blocks;
    CanonicalForm right;
};

// Matches [scat?, shuffle, scat?].
std::optional<ShuffleShape> match_shuffle_shape(const CanonicalForm& cf) {
    const auto& cs = cf.components;
    std::size_t pos = 0;
    ShuffleShape shape;
    if (pos < cs.size() && !cs[pos].is_shuffle()) shape.left = from_scat(cs[pos++].scat);
    if (pos >= cs.size() || !cs[pos].is_shuffle()) return std::nullopt;
    shape.blocks = cs[pos++].blocks;
    if (pos < cs.size() && !cs[pos].is_shuffle()) shape.right = from_scat(cs[pos++].scat);
    if (pos != cs.size()) return std::nullopt;
    return shape;
}

// kappa-many copies of fiber for kappa in {N, N~, Z}.
CanonicalForm kappa_times(PowKind kind, const CanonicalForm& fiber) {
    if (fiber.empty()) return {};
    if (fiber.components.size() == 1 && !fiber.components[0].is_shuffle())
        return from_scat(ScatNF{make_pow(kind, fiber.components[0].scat.atoms)});

    auto stuck = [&](const std::string& why) {
        return Stuck(OrderTerm::product(kappa_term(kind), to_term(fiber)),
                     "no rule rewrites " + print(kappa_term(kind)) + "*(" + to_string(fiber) + "): " + why);
    };
    auto shape = match_shuffle_shape(fiber);
    if (!shape) throw stuck("fiber is not of the form L + Q[...] + R");
    // Adjacent copies meet in R + L; the copies fuse only if that junction
    // vanishes or is itself one of the shuffled blocks.
    const auto junction = concat(shape->right, shape->left);
    if (!junction.empty() && !has_block(shape->blocks, junction))
        throw stuck("junction " + to_string(junction) + " is not a block");

    std::vector<Component> cs;
    auto shuf = Component::shuffled(shape->blocks);
    switch (kind) {
        case PowKind::Omega:
            for (const auto& c : shape->left.components) cs.push_back(c);
            cs.push_back(shuf);
            break;
        case PowKind::OmegaStar:
            cs.push_back(shuf);
            for (const auto& c : shape->right.components) cs.push_back(c);
            break;
        case PowKind::Zeta:
            cs.push_back(shuf);
            break;
    }
    return normalize_components(std::move(cs));
}

CanonicalForm repeat(const CanonicalForm& fiber, std::uint64_t k) {
    if (k == 0 || fiber.empty()) return {};
    if (fiber.components.size() == 1 && !fiber.components[0].is_shuffle()) {
        std::vector<ScatAtom> index{ScatAtom::fin(k)};
        return from_scat(ScatNF{scat_product(index, fiber.components[0].scat.atoms)});
    }
    CanonicalForm acc = fiber;
    for (std::uint64_t i = 1; i < k; ++i) {
        auto next = concat(acc, fiber);
        if (next == acc) break;  // k copies collapse to one
        acc = std::move(next);
        if (weight(acc) > kExpansionLimit) throw Unsupported("finite index too large to expand");
    }
    return acc;
}

CanonicalForm canon_desugared(const OrderTerm& t) {
    switch (t.kind()) {
        case TermKind::Empty: return {};
        case TermKind::Single: return from_scat(ScatNF{{ScatAtom::fin(1)}});
        case TermKind::Finite: return from_scat(ScatNF{{ScatAtom::fin(static_cast<std::uint64_t>(t.count()))}});
        case TermKind::Omega: return from_scat(ScatNF{{ScatAtom::w()}});
        case TermKind::OmegaStar: return from_scat(ScatNF{{ScatAtom::wstar()}});
        case TermKind::Zeta: return from_scat(ScatNF{{ScatAtom::zat()}});
        case TermKind::Sum: return concat(canon_desugared(t.left()), canon_desugared(t.right()));
        case TermKind::Product: return product(canon_desugared(t.index()), canon_desugared(t.fiber()));
        case TermKind::Shuffle: {
            std::vector<CanonicalForm> blocks;
            for (const auto& b : t.blocks()) blocks.push_back(canon_desugared(b));
            return make_shuffle(std::move(blocks));
        }
        case TermKind::Reverse: return mirror(canon_desugared(t.body()));
    }
    return {};
}

std::uint64_t fin_total(const CanonicalForm& cf) {
    std::uint64_t n = 0;
    auto atoms_total = [&](auto&& self, const std::vector<ScatAtom>& atoms) -> void {
        for (const auto& a : atoms) {
            if (a.kind == ScatAtom::Kind::Fin) n = checked_add(n, a.count);
            if (a.kind == ScatAtom::Kind::Pow) self(self, a.body);
        }
    };
    for (const auto& c : cf.components) {
        if (c.is_shuffle()) {
            for (const auto& b : c.blocks) n = checked_add(n, fin_total(b));
        } else {
            atoms_total(atoms_total, c.scat.atoms);
        }
    }
    return n;
}

std::vector<ScatAtom> mirror_atoms(const std::vector<ScatAtom>& atoms) {
    std::vector<ScatAtom> out;
    out.reserve(atoms.size());
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
        switch (it->kind) {
            case ScatAtom::Kind::Fin:
            case ScatAtom::Kind::Zat: out.push_back(*it); break;
            case ScatAtom::Kind::W: out.push_back(ScatAtom::wstar()); break;
            case ScatAtom::Kind::Wstar: out.push_back(ScatAtom::w()); break;
            case ScatAtom::Kind::Pow: {
                PowKind k = it->pow;
                if (k == PowKind::Omega) k = PowKind::OmegaStar;
                else if (k == PowKind::OmegaStar) k = PowKind::Omega;
                out.push_back(ScatAtom::power(k, mirror_atoms(it->body)));
                break;
            }
        }
    }
    return out;
}

// Single-step unrollings of top-level powers: N*B = B + N*B, N~*B = N~*B + B,
// Z*B = B + Z*B = Z*B + B.
std::vector<CanonicalForm> unroll_once(const CanonicalForm& cf) {
    std::vector<CanonicalForm> out;
    for (std::size_t ci = 0; ci < cf.components.size(); ++ci) {
        const auto& comp = cf.components[ci];
        if (comp.is_shuffle()) continue;
        for (std::size_t ai = 0; ai < comp.scat.atoms.size(); ++ai) {
            const auto& atom = comp.scat.atoms[ai];
            if (atom.kind != ScatAtom::Kind::Pow) continue;
            auto emit = [&](bool body_first) {
                std::vector<ScatAtom> atoms(comp.scat.atoms.begin(), comp.scat.atoms.begin() + static_cast<std::ptrdiff_t>(ai));
                if (body_first) atoms.insert(atoms.end(), atom.body.begin(), atom.body.end());
                atoms.push_back(atom);
                if (!body_first) atoms.insert(atoms.end(), atom.body.begin(), atom.body.end());
                atoms.insert(atoms.end(), comp.scat.atoms.begin() + static_cast<std::ptrdiff_t>(ai) + 1, comp.scat.atoms.end());
                auto cs = cf.components;
                cs[ci] = Component::scattered(normalize_scat(std::move(atoms)));
                out.push_back(normalize_components(std::move(cs)));
            };
            if (atom.pow != PowKind::OmegaStar) emit(true);
            if (atom.pow != PowKind::Omega) emit(false);
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ordering and equality

bool operator==(const ScatAtom& a, const ScatAtom& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const ScatAtom& a, const ScatAtom& b) {
    if (auto c = rank(a.kind) <=> rank(b.kind); c != 0) return c;
    if (a.kind == ScatAtom::Kind::Fin) return a.count <=> b.count;
    if (a.kind != ScatAtom::Kind::Pow) return std::strong_ordering::equal;
    if (auto c = a.pow <=> b.pow; c != 0) return c;
    return std::lexicographical_compare_three_way(a.body.begin(), a.body.end(), b.body.begin(), b.body.end());
}

bool ScatNF::tame() const { return atoms_tame(atoms); }

std::strong_ordering operator<=>(const ScatNF& a, const ScatNF& b) {
    return std::lexicographical_compare_three_way(a.atoms.begin(), a.atoms.end(), b.atoms.begin(), b.atoms.end());
}

Component Component::scattered(ScatNF s) {
    Component c;
    c.scat = std::move(s);
    return c;
}

Component Component::shuffled(std::vector<CanonicalForm> blocks) {
    Component c;
    c.shuffle = true;
    c.blocks = std::move(blocks);
    return c;
}

bool operator==(const Component& a, const Component& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Component& a, const Component& b) {
    if (auto c = a.shuffle <=> b.shuffle; c != 0) return c;
    if (!a.shuffle) return a.scat <=> b.scat;
    return std::lexicographical_compare_three_way(a.blocks.begin(), a.blocks.end(), b.blocks.begin(), b.blocks.end());
}

bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
    return std::lexicographical_compare_three_way(a.components.begin(), a.components.end(),
                                                  b.components.begin(), b.components.end());
}

std::size_t CanonicalForm::shuffle_count() const {
    return static_cast<std::size_t>(
        std::count_if(components.begin(), components.end(), [](const Component& c) { return c.is_shuffle(); }));
}

Stuck::Stuck(OrderTerm subterm, const std::string& what)
    : std::runtime_error(what), subterm_(std::move(subterm)) {}

// ---------------------------------------------------------------------------
// Rewriting

ScatNF normalize_scat(std::vector<ScatAtom> atoms) {
    ScatNF out;
    for (auto& a : atoms) {
        if (a.kind == ScatAtom::Kind::Fin && a.count == 0) continue;
        out.atoms.push_back(std::move(a));
        while (out.atoms.size() >= 2) {
            auto merged = merge_atoms(out.atoms[out.atoms.size() - 2], out.atoms.back());
            if (!merged) break;
            out.atoms.pop_back();
            out.atoms.back() = std::move(*merged);
        }
    }
    return out;
}

CanonicalForm from_scat(ScatNF s) {
    CanonicalForm cf;
    if (s.empty()) return cf;
    cf.tame = s.tame();
    cf.components.push_back(Component::scattered(std::move(s)));
    return cf;
}

CanonicalForm concat(const CanonicalForm& a, const CanonicalForm& b) {
    std::vector<Component> cs = a.components;
    cs.insert(cs.end(), b.components.begin(), b.components.end());
    return normalize_components(std::move(cs));
}

bool has_block(const std::vector<CanonicalForm>& blocks, const CanonicalForm& x) {
    return std::binary_search(blocks.begin(), blocks.end(), x);
}

std::optional<std::vector<CanonicalForm>> flatten_step(const std::vector<CanonicalForm>& blocks) {
    // A block J = s0 + Q[C1] + s1 + ... + Q[Cm] + sm dissolves into the
    // ambient shuffle exactly when the candidate set
    //   B' = (B \ {J}) u C1 u ... u Cm u {nonempty si}
    // coincides with one of the Ci.  Then every piece of J is dense among the
    // Ci-colored points and Q[B] condenses onto Q[Ci].  Otherwise J contains
    // no convex copy of the candidate shuffle and stays an atomic block; e.g.
    // Q[1 + Q[Z]] must not become Q[1, Z].
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        const auto& J = blocks[j];
        if (J.shuffle_count() == 0) continue;
        std::vector<CanonicalForm> candidate;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (i != j) candidate.push_back(blocks[i]);
        for (const auto& c : J.components) {
            if (c.is_shuffle()) {
                candidate.insert(candidate.end(), c.blocks.begin(), c.blocks.end());
            } else {
                candidate.push_back(from_scat(c.scat));
            }
        }
        sort_unique(candidate);
        for (const auto& c : J.components)
            if (c.is_shuffle() && c.blocks == candidate) return candidate;
    }
    return std::nullopt;
}

CanonicalForm make_shuffle(std::vector<CanonicalForm> blocks) {
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(), [](const CanonicalForm& b) { return b.empty(); }),
                 blocks.end());
    if (blocks.empty()) return {};
    sort_unique(blocks);
    while (auto next = flatten_step(blocks)) blocks = std::move(*next);

    for (const auto& b : blocks)
        for (const auto& c : b.components)
            if (c.is_shuffle() && c.blocks == blocks)
                throw InternalInvariantViolation("shuffle block contains a convex copy of its own shuffle");

    CanonicalForm cf;
    cf.components.push_back(Component::shuffled(std::move(blocks)));
    cf.tame = compute_tame(cf.components);
    return cf;
}

CanonicalForm product(const CanonicalForm& index, const CanonicalForm& fiber) {
    if (index.empty() || fiber.empty()) return {};
    std::vector<Component> cs;
    auto append = [&cs](const CanonicalForm& part) {
        cs.insert(cs.end(), part.components.begin(), part.components.end());
    };
    for (const auto& comp : index.components) {
        if (comp.is_shuffle()) {
            // Q[A]*Y = Q[{I*Y : I in A}]
            std::vector<CanonicalForm> blocks;
            for (const auto& b : comp.blocks) blocks.push_back(product(b, fiber));
            append(make_shuffle(std::move(blocks)));
            continue;
        }
        for (const auto& atom : comp.scat.atoms) {
            switch (atom.kind) {
                case ScatAtom::Kind::Fin: append(repeat(fiber, atom.count)); break;
                case ScatAtom::Kind::W: append(kappa_times(PowKind::Omega, fiber)); break;
                case ScatAtom::Kind::Wstar: append(kappa_times(PowKind::OmegaStar, fiber)); break;
                case ScatAtom::Kind::Zat: append(kappa_times(PowKind::Zeta, fiber)); break;
                case ScatAtom::Kind::Pow:
                    append(kappa_times(atom.pow, product(from_scat(ScatNF{atom.body}), fiber)));
                    break;
            }
        }
    }
    return normalize_components(std::move(cs));
}

CanonicalForm canonicalize(const OrderTerm& t) { return canon_desugared(desugar(t)); }

std::optional<CanonicalForm> try_canonicalize(const OrderTerm& t) {
    try {
        return canonicalize(t);
    } catch (const Stuck&) {
        return std::nullopt;
    } catch (const Unsupported&) {
        return std::nullopt;
    }
}

std::optional<ScatNF> scat_normalize(const OrderTerm& t) {
    const auto d = desugar(t);
    if (contains_shuffle(d)) return std::nullopt;
    auto cf = canon_desugared(d);
    if (cf.empty()) return ScatNF{};
    return cf.components.front().scat;
}

// ---------------------------------------------------------------------------
// Equality, mirror, segments

const char* to_string(CfVerdict v) {
    switch (v) {
        case CfVerdict::Equal: return "Equal";
        case CfVerdict::NotEqual: return "NotEqual";
        case CfVerdict::StructuralOnly: return "StructuralOnly";
    }
    return "?";
}

CfVerdict cf_equal(const CanonicalForm& a, const CanonicalForm& b) {
    if (a == b) return CfVerdict::Equal;
    if (a.tame && b.tame) return CfVerdict::NotEqual;

    auto expand = [](const CanonicalForm& cf) {
        std::vector<std::vector<CanonicalForm>> levels{{cf}};
        for (int depth = 1; depth <= 2; ++depth) {
            std::vector<CanonicalForm> next;
            for (const auto& f : levels.back()) {
                auto u = unroll_once(f);
                next.insert(next.end(), u.begin(), u.end());
            }
            levels.push_back(std::move(next));
        }
        return levels;
    };
    const auto la = expand(a);
    const auto lb = expand(b);
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; i + j <= 2; ++j)
            for (const auto& x : la[static_cast<std::size_t>(i)])
                for (const auto& y : lb[static_cast<std::size_t>(j)])
                    if (x == y) return CfVerdict::Equal;
    return CfVerdict::StructuralOnly;
}

CanonicalForm mirror(const CanonicalForm& cf) {
    std::vector<Component> cs;
    for (auto it = cf.components.rbegin(); it != cf.components.rend(); ++it) {
        if (it->is_shuffle()) {
            std::vector<CanonicalForm> blocks;
            for (const auto& b : it->blocks) blocks.push_back(mirror(b));
            auto s = make_shuffle(std::move(blocks));
            cs.insert(cs.end(), s.components.begin(), s.components.end());
        } else {
            cs.push_back(Component::scattered(normalize_scat(mirror_atoms(it->scat.atoms))));
        }
    }
    return normalize_components(std::move(cs));
}

std::vector<CanonicalForm> initial_segments(const CanonicalForm& t, std::uint64_t finite_bound) {
    if (!t.tame) throw Unsupported("segment families are decided only for tame forms");
    std::vector<CanonicalForm> out{CanonicalForm{}};
    std::vector<Component> prefix;

    auto emit = [&](const std::vector<Component>& tail) {
        auto cs = prefix;
        cs.insert(cs.end(), tail.begin(), tail.end());
        out.push_back(normalize_components(std::move(cs)));
    };
    auto emit_atom = [&](ScatAtom a) { emit({Component::scattered(ScatNF{{std::move(a)}})}); };

    for (const auto& comp : t.components) {
        if (comp.is_shuffle()) {
            // A cut at an irrational point, or inside (or right after) a block.
            emit({comp});
            for (const auto& b : comp.blocks) {
                for (const auto& r : initial_segments(b, finite_bound)) {
                    if (r.empty()) continue;
                    std::vector<Component> tail{comp};
                    tail.insert(tail.end(), r.components.begin(), r.components.end());
                    emit(tail);
                }
            }
            prefix.push_back(comp);
            continue;
        }
        for (const auto& atom : comp.scat.atoms) {
            switch (atom.kind) {
                case ScatAtom::Kind::Fin:
                    for (std::uint64_t j = 1; j <= atom.count; ++j) emit_atom(ScatAtom::fin(j));
                    break;
                case ScatAtom::Kind::W:
                    for (std::uint64_t j = 1; j <= finite_bound; ++j) emit_atom(ScatAtom::fin(j));
                    emit_atom(ScatAtom::w());
                    break;
                case ScatAtom::Kind::Wstar:
                    emit_atom(ScatAtom::wstar());
                    break;
                case ScatAtom::Kind::Zat:
                    emit_atom(ScatAtom::wstar());
                    emit_atom(ScatAtom::zat());
                    break;
                case ScatAtom::Kind::Pow:
                    throw Unsupported("segment families are decided only for tame forms");
            }
            prefix.push_back(Component::scattered(ScatNF{{atom}}));
        }
    }
    sort_unique(out);
    return out;
}

std::vector<CanonicalForm> final_segments(const CanonicalForm& t, std::uint64_t finite_bound) {
    auto mirrored = initial_segments(mirror(t), finite_bound);
    std::vector<CanonicalForm> out;
    out.reserve(mirrored.size());
    for (const auto& m : mirrored) out.push_back(mirror(m));
    sort_unique(out);
    return out;
}

bool is_initial_segment(const CanonicalForm& s, const CanonicalForm& t) {
    if (!s.tame || !t.tame) throw Unsupported("segment relations are decided only for tame forms");
    const auto family = initial_segments(t, fin_total(s) + 1);
    return std::binary_search(family.begin(), family.end(), s);
}

bool is_final_segment(const CanonicalForm& s, const CanonicalForm& t) {
    if (!s.tame || !t.tame) throw Unsupported("segment relations are decided only for tame forms");
    return is_initial_segment(mirror(s), mirror(t));
}

// ---------------------------------------------------------------------------
// Back to terms

namespace {

OrderTerm atom_term(const ScatAtom& a) {
    switch (a.kind) {
        case ScatAtom::Kind::Fin:
            return a.count == 1 ? OrderTerm::single() : OrderTerm::finite(static_cast<std::int64_t>(a.count));
        case ScatAtom::Kind::W: return OrderTerm::omega();
        case ScatAtom::Kind::Wstar: return OrderTerm::omega_star();
        case ScatAtom::Kind::Zat: return OrderTerm::zeta();
        case ScatAtom::Kind::Pow: return OrderTerm::product(kappa_term(a.pow), to_term(ScatNF{a.body}));
    }
    return OrderTerm::empty();
}

OrderTerm fold_sum(std::vector<OrderTerm> parts) {
    if (parts.empty()) return OrderTerm::empty();
    OrderTerm t = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) t = OrderTerm::sum(std::move(t), parts[i]);
    return t;
}

}  // namespace

OrderTerm to_term(const ScatNF& s) {
    std::vector<OrderTerm> parts;
    for (const auto& a : s.atoms) parts.push_back(atom_term(a));
    return fold_sum(std::move(parts));
}

OrderTerm to_term(const CanonicalForm& cf) {
    std::vector<OrderTerm> parts;
    for (const auto& c : cf.components) {
        if (c.is_shuffle()) {
            std::vector<OrderTerm> blocks;
            for (const auto& b : c.blocks) blocks.push_back(to_term(b));
            parts.push_back(OrderTerm::shuffle(std::move(blocks)));
        } else {
            for (const auto& a : c.scat.atoms) parts.push_back(atom_term(a));
        }
    }
    return fold_sum(std::move(parts));
}

std::string to_string(const CanonicalForm& cf) { return print(to_term(cf)); }

}  // namespace ordtype
