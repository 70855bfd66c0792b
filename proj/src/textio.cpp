#include "ordtype/textio.hpp"

#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "ordtype/canon.hpp"

namespace ordtype {

ParseError::ParseError(SourceSpan span, const std::string& message)
    : std::runtime_error(message), span_(span) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    OrderTerm run() {
        auto t = sum();
        skip_ws();
        if (pos_ < text_.size()) fail(pos_, pos_ + 1, "unexpected '" + std::string(1, text_[pos_]) + "'");
        return t;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::size_t start, std::size_t end, const std::string& msg) const {
        if (end > text_.size()) end = text_.size();
        if (start > end) start = end;
        throw ParseError({start, end}, msg + " at offset " + std::to_string(start));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(pos_, pos_, std::string("expected '") + c + "' before end of input");
            fail(pos_, pos_ + 1, std::string("expected '") + c + "'");
        }
    }

    OrderTerm sum() {
        auto t = prod();
        while (accept('+')) t = OrderTerm::sum(std::move(t), prod());
        return t;
    }

    OrderTerm prod() {
        auto t = post();
        while (accept('*')) t = OrderTerm::product(std::move(t), post());
        return t;
    }

    OrderTerm post() {
        auto t = atom();
        while (accept('~')) t = OrderTerm::reverse(std::move(t));
        return t;
    }

    OrderTerm atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail(pos_, pos_, "expected an order expression before end of input");
        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t value = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                value = value * 10 + (text_[pos_] - '0');
                if (value > std::numeric_limits<std::int32_t>::max())
                    fail(start, pos_ + 1, "natural number literal exceeds 2^31-1");
                ++pos_;
            }
            if (value == 0) return OrderTerm::empty();
            if (value == 1) return OrderTerm::single();
            return OrderTerm::finite(value);
        }
        ++pos_;
        switch (c) {
            case 'N': return OrderTerm::omega();
            case 'Z': return OrderTerm::zeta();
            case 'Q': {
                if (!accept('[')) return OrderTerm::rationals();
                std::vector<OrderTerm> blocks;
                blocks.push_back(sum());
                while (accept(',')) blocks.push_back(sum());
                expect(']');
                return OrderTerm::shuffle(std::move(blocks));
            }
            case '(': {
                auto t = sum();
                expect(')');
                return t;
            }
            default:
                fail(start, start + 1, "unexpected '" + std::string(1, c) + "'");
        }
    }
};

int precedence(const OrderTerm& t) {
    switch (t.kind()) {
        case TermKind::Sum: return 0;
        case TermKind::Product: return 1;
        case TermKind::Reverse: return 2;
        default: return 3;
    }
}

void print_into(std::ostringstream& os, const OrderTerm& t, int min_precedence) {
    const bool parens = precedence(t) < min_precedence;
    if (parens) os << '(';
    switch (t.kind()) {
        case TermKind::Empty: os << '0'; break;
        case TermKind::Single: os << '1'; break;
        case TermKind::Finite: os << t.count(); break;
        case TermKind::Omega: os << 'N'; break;
        case TermKind::OmegaStar: os << "N~"; break;
        case TermKind::Zeta: os << 'Z'; break;
        case TermKind::Sum:
            print_into(os, t.left(), 0);
            os << " + ";
            print_into(os, t.right(), 1);
            break;
        case TermKind::Product:
            print_into(os, t.index(), 1);
            os << '*';
            print_into(os, t.fiber(), 2);
            break;
        case TermKind::Reverse:
            print_into(os, t.body(), 2);
            os << '~';
            break;
        case TermKind::Shuffle:
            if (t.blocks().size() == 1 && t.blocks()[0].is(TermKind::Single)) {
                os << 'Q';
                break;
            }
            os << "Q[";
            for (std::size_t i = 0; i < t.blocks().size(); ++i) {
                if (i) os << ',';
                print_into(os, t.blocks()[i], 0);
            }
            os << ']';
            break;
    }
    if (parens) os << ')';
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

OrderTerm parse(std::string_view text) {
    auto t = Parser(text).run();
    validate(t);
    return t;
}

std::string print(const OrderTerm& t) {
    std::ostringstream os;
    print_into(os, t, 0);
    return os.str();
}

std::string to_dot(const CanonicalForm& cf) {
    std::ostringstream os;
    os << "digraph canonical {\n";
    os << "  node [shape=box, fontname=\"monospace\"];\n";
    int next_id = 0;

    // Emits the chain for one canonical form and returns the id of its first node.
    std::function<int(const CanonicalForm&)> emit = [&](const CanonicalForm& form) -> int {
        if (form.components.empty()) {
            const int id = next_id++;
            os << "  n" << id << " [label=\"0\"];\n";
            return id;
        }
        int first = -1;
        int prev = -1;
        for (const auto& comp : form.components) {
            const int id = next_id++;
            if (comp.is_shuffle()) {
                os << "  n" << id << " [label=\"Q[...]\", shape=ellipse];\n";
            } else {
                os << "  n" << id << " [label=\"" << dot_escape(print(to_term(comp.scat))) << "\"];\n";
            }
            if (prev >= 0) os << "  n" << prev << " -> n" << id << " [style=bold];\n";
            if (first < 0) first = id;
            prev = id;
            if (comp.is_shuffle()) {
                for (const auto& block : comp.blocks) {
                    const int child = emit(block);
                    os << "  n" << id << " -> n" << child << " [style=dashed];\n";
                }
            }
        }
        return first;
    };
    emit(cf);
    os << "}\n";
    return os.str();
}

}  // namespace ordtype
