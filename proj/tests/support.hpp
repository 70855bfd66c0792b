#pragma once

// Shared corpora and generators for the test binaries.

#include <random>
#include <string>
#include <vector>

#include "ordtype/oracle.hpp"
#include "ordtype/term.hpp"
#include "ordtype/textio.hpp"

namespace ordtype::testing {

// Every order discussed in the worked examples, plus a few controls.
inline const std::vector<std::string>& golden_corpus() {
    static const std::vector<std::string> c = {
        "Q", "1 + Q", "Q + 1", "1 + Q + 1",
        "Q[Z]", "Z + Q[Z]", "Q[Z] + Z", "Z + Q[Z] + Z",
        "N + Q[Z] + N~", "N + Q[Z]", "N + Q[Z,N]", "Q[N,Z]",
        "Q[1, 1+Q]", "Q[N, Z + Q[N, Z]]", "Q[1 + Q[Z]]", "Q[1,Z]",
        "N + Q[Z,N] + N~", "N + Q[Z,N~] + N~", "N + Q[Z,N,N~] + N~",
        "Q[Z] + Z + Q[N]", "1 + Q[Z]", "1 + Q[Z] + 1",
        "Z", "N", "N~", "1", "2", "N + N~",
    };
    return c;
}

// Orders whose absorption class is known, covering every case.
inline const std::vector<std::string>& classified_corpus() {
    static const std::vector<std::string> c = {
        "Q", "1 + Q", "Q + 1", "1 + Q + 1",
        "Q[Z]", "Z + Q[Z]", "Q[Z] + Z", "Z + Q[Z] + Z",
        "N + Q[Z] + N~", "N + Q[Z]", "N + Q[Z,N]", "Q[N,Z]",
        "N + Q[Z,N] + N~", "N + Q[Z,N~] + N~", "N + Q[Z,N,N~] + N~",
        "Q[1 + Q[Z]]", "Q[Z] + Z + Q[N]", "1 + Q[Z]", "Z", "2",
    };
    return c;
}

inline const std::vector<std::string>& absorbed_candidates() {
    static const std::vector<std::string> c = {
        "1", "2", "3", "N", "N~", "Z", "1 + Q", "Q + 1", "1 + Q + 1", "N + N~",
    };
    return c;
}

// Random validated terms over the atoms 1, n, N, N~, Z and all constructors.
class TermGen {
public:
    explicit TermGen(unsigned seed) : rng_(seed) {}

    OrderTerm operator()(int depth) {
        if (depth <= 0 || pick(10) < 3) return atom();
        switch (pick(5)) {
            case 0: return OrderTerm::sum((*this)(depth - 1), (*this)(depth - 1));
            case 1: return OrderTerm::product((*this)(depth - 1), (*this)(depth - 1));
            case 2: {
                std::vector<OrderTerm> blocks;
                const int k = 1 + pick(3);
                for (int i = 0; i < k; ++i) blocks.push_back(nonempty(depth - 1));
                return OrderTerm::shuffle(std::move(blocks));
            }
            case 3: return OrderTerm::reverse((*this)(depth - 1));
            default: return OrderTerm::sum(atom(), (*this)(depth - 1));
        }
    }

    OrderTerm nonempty(int depth) {
        for (;;) {
            auto t = (*this)(depth);
            if (!desugar(t).is(TermKind::Empty)) return t;
        }
    }

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    std::mt19937& rng() { return rng_; }

private:
    OrderTerm atom() {
        switch (pick(8)) {
            case 0: return OrderTerm::single();
            case 1: return OrderTerm::finite(2 + pick(3));
            case 2: return OrderTerm::omega();
            case 3: return OrderTerm::omega_star();
            case 4: return OrderTerm::zeta();
            case 5: return OrderTerm::rationals();
            case 6: return OrderTerm::empty();
            default: return OrderTerm::single();
        }
    }

    std::mt19937 rng_;
};

// A random point of a realization, drawn by a walk over its (desugared)
// term with geometric magnitudes and random positions.
inline PointCode random_code(const OrderTerm& t, std::mt19937& rng) {
    auto geo = [&] { return static_cast<std::int64_t>(std::geometric_distribution<int>(0.3)(rng)); };
    auto coin = [&] { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; };
    PointCode c;
    switch (t.kind()) {
        case TermKind::Single: break;
        case TermKind::Finite: c.value = std::uniform_int_distribution<std::int64_t>(0, t.count() - 1)(rng); break;
        case TermKind::Omega:
        case TermKind::OmegaStar: c.value = geo(); break;
        case TermKind::Zeta: c.value = coin() ? geo() : -geo(); break;
        case TermKind::Sum:
            c.value = coin() ? 1 : 0;
            c.children.push_back(random_code(c.value ? t.right() : t.left(), rng));
            break;
        case TermKind::Product:
            c.children.push_back(random_code(t.index(), rng));
            c.children.push_back(random_code(t.fiber(), rng));
            break;
        case TermKind::Shuffle: {
            const auto len = static_cast<std::size_t>(geo());
            for (std::size_t i = 0; i < len; ++i) c.path.push_back(coin() ? 'R' : 'L');
            c.children.push_back(random_code(t.blocks()[len % t.blocks().size()], rng));
            break;
        }
        default: break;
    }
    return c;
}

}  // namespace ordtype::testing
