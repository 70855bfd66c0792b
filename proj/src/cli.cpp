#include "ordtype/cli.hpp"

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordtype/canon.hpp"
#include "ordtype/classify.hpp"
#include "ordtype/errors.hpp"
#include "ordtype/oracle.hpp"
#include "ordtype/textio.hpp"

namespace ordtype::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Invocation {
    std::string command;
    std::vector<std::string> exprs;
    std::size_t count = 20;
    int rounds = 8;
    bool json = false;
};

struct Outcome {
    std::string text;
    Json result;
    int code = kOk;
};

// Raised for a computed result that signals a defect rather than a verdict.
struct InternalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* verdict(bool b) { return b ? "true" : "false"; }

Json decomposition_json(const Decomposition& d) {
    Json j;
    j["L"] = to_string(d.left);
    auto blocks = Json::array();
    for (const auto& b : d.blocks) blocks.push_back(to_string(b));
    j["blocks"] = std::move(blocks);
    j["R"] = to_string(d.right);
    return j;
}

Outcome run_command(const Invocation& inv) {
    std::vector<OrderTerm> terms;
    for (const auto& e : inv.exprs) terms.push_back(parse(e));
    const auto& t = terms.front();
    Outcome o;
    const auto& cmd = inv.command;

    if (cmd == "parse") {
        o.text = debug_string(t);
        o.result = o.text;
    } else if (cmd == "norm") {
        try {
            o.text = to_string(canonicalize(t));
        } catch (const Stuck& e) {
            throw Unsupported(std::string("stuck at ") + print(e.subterm()) + ": " + e.what());
        }
        o.result = o.text;
    } else if (cmd == "classify") {
        const auto c = classify_absorption(t);
        o.text = to_string(c);
        Json j;
        j["verdict"] = o.text;
        if (c.kind == AbsorptionClass::Kind::Case) j["case"] = c.case_number;
        if (c.witness) {
            const auto dj = decomposition_json(*c.witness);
            for (const auto& [k, v] : dj.items()) j[k] = v;
        }
        if (!c.reason.empty()) j["reason"] = c.reason;
        o.result = std::move(j);
    } else if (cmd == "absorbs") {
        o.text = verdict(absorbs(terms[0], terms[1]));
        o.result = o.text;
    } else if (cmd == "spectrum") {
        const auto s = spectrum_description(t);
        o.text = std::string(to_string(s)) + ": " + describe(s);
        o.result = to_string(s);
    } else if (cmd == "square") {
        o.text = verdict(is_square(t));
        o.result = o.text;
    } else if (cmd == "square2") {
        const auto s = square_two_endpoints(t);
        o.result = to_string(s.verdict);
        o.text = to_string(s.verdict);
        if (s.case_number > 0) o.text += " (case " + std::to_string(s.case_number) + ")";
    } else if (cmd == "selfsim") {
        const auto s = is_self_similar(t);
        o.result = verdict(s.value);
        o.text = verdict(s.value);
        if (!s.value) o.text += ": " + s.reason;
    } else if (cmd == "enum") {
        const Realization r(t);
        o.result = Json::array();
        std::ostringstream os;
        for (const auto& c : r.enumerate(inv.count)) {
            const auto s = r.format(c);
            os << s << "\n";
            o.result.push_back(s);
        }
        o.text = os.str();
        if (!o.text.empty()) o.text.pop_back();
    } else if (cmd == "check") {
        const auto rep = cross_check(t, inv.count);
        o.text = rep.to_text();
        o.text.pop_back();
        o.result = Json::parse(rep.to_json());
        if (rep.failed()) o.code = kInternal;
    } else if (cmd == "bnf") {
        const auto b = back_and_forth(terms[0], terms[1], inv.rounds);
        const Realization rx(terms[0]), ry(terms[1]);
        std::ostringstream os;
        Json pairs = Json::array();
        for (std::size_t i = 0; i < b.pairs.size(); ++i) {
            const auto xs = rx.format(b.pairs[i].first);
            const auto ys = ry.format(b.pairs[i].second);
            os << "round " << i + 1 << ": " << xs << " <-> " << ys << "\n";
            pairs.push_back(Json::array({xs, ys}));
        }
        Json j;
        j["ok"] = b.ok;
        j["pairs"] = std::move(pairs);
        if (b.ok) {
            os << "partial isomorphism with " << b.pairs.size() << " pairs";
        } else {
            os << "failed at round " << b.failed_round << ": " << b.reason;
            j["failed_round"] = b.failed_round;
            j["reason"] = b.reason;
            const auto cx = try_canonicalize(terms[0]);
            const auto cy = try_canonicalize(terms[1]);
            if (cx && cy && cf_equal(*cx, *cy) == CfVerdict::Equal)
                throw InternalFailure("back-and-forth failed between isomorphic orders: " + b.reason);
        }
        o.text = os.str();
        o.result = std::move(j);
    } else if (cmd == "dot") {
        try {
            o.text = to_dot(canonicalize(t));
        } catch (const Stuck& e) {
            throw Unsupported(std::string("stuck at ") + print(e.subterm()) + ": " + e.what());
        }
        if (!o.text.empty() && o.text.back() == '\n') o.text.pop_back();
        o.result = o.text;
    }
    return o;
}

struct ErrorInfo {
    std::string kind;
    std::string message;
    std::optional<SourceSpan> span;
    int code = kInternal;
};

void emit(const Invocation& inv, std::ostream& out, std::ostream& err, const Outcome* ok, const ErrorInfo* e) {
    if (inv.json) {
        Json doc;
        doc["command"] = inv.command;
        if (inv.exprs.size() == 1) doc["input"] = inv.exprs.front();
        else doc["input"] = inv.exprs;
        if (ok) {
            doc["result"] = ok->result;
        } else {
            Json je;
            je["kind"] = e->kind;
            je["message"] = e->message;
            if (e->span) je["span"] = Json{{"start", e->span->start}, {"end", e->span->end}};
            doc["error"] = std::move(je);
        }
        out << doc.dump() << "\n";
        return;
    }
    if (ok) out << ok->text << "\n";
    else err << "error: " << e->kind << ": " << e->message << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Invocation inv;
    CLI::App app{"Symbolic calculator for countable linear order types"};
    app.name("ordtype");
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_flag("--json", inv.json, "Print a single JSON document");

    struct Subcommand {
        const char* name;
        const char* help;
        int arity;
    };
    const Subcommand subcommands[] = {
        {"parse", "Echo the validated syntax tree", 1},
        {"norm", "Print the canonical form", 1},
        {"classify", "Left-absorption class with the witness decomposition", 1},
        {"absorbs", "Whether A*X is isomorphic to X", 2},
        {"spectrum", "Which orders A satisfy A*X = X", 1},
        {"square", "Whether X*X is isomorphic to X", 1},
        {"square2", "Square test for orders with both endpoints", 1},
        {"selfsim", "Whether X is self-similar", 1},
        {"enum", "Enumerate points of X", 1},
        {"check", "Cross-check the profile of X against sampled points", 1},
        {"bnf", "Back-and-forth transcript between X and Y", 2},
        {"dot", "Graphviz rendering of the canonical form", 1},
    };
    for (const auto& s : subcommands) {
        auto* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("expr", inv.exprs, s.arity == 1 ? "Order expression" : "Two order expressions")
            ->required()
            ->expected(s.arity);
        const std::string name = s.name;
        if (name == "enum" || name == "check")
            sub->add_option("-n", inv.count, "Number of points")->capture_default_str()->check(CLI::PositiveNumber);
        if (name == "bnf")
            sub->add_option("-r", inv.rounds, "Rounds")->capture_default_str()->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        if (inv.json) {
            ErrorInfo info{"UsageError", e.what(), std::nullopt, kInputError};
            emit(inv, out, err, nullptr, &info);
        } else {
            app.exit(e, out, err);
        }
        return kInputError;
    }
    inv.command = app.get_subcommands().front()->get_name();

    ErrorInfo info;
    try {
        const auto o = run_command(inv);
        emit(inv, out, err, &o, nullptr);
        return o.code;
    } catch (const ParseError& e) {
        info = {"ParseError", e.what(), e.span(), kInputError};
    } catch (const ValidationError& e) {
        info = {std::string("ValidationError.") + to_string(e.kind()), e.what(), std::nullopt, kInputError};
    } catch (const Stuck& e) {
        info = {"Stuck", e.what(), std::nullopt, kUnsupported};
    } catch (const Unsupported& e) {
        info = {"Unsupported", e.what(), std::nullopt, kUnsupported};
    } catch (const InternalInvariantViolation& e) {
        info = {"InternalInvariantViolation", e.what(), std::nullopt, kInternal};
    } catch (const InternalFailure& e) {
        info = {"InternalInvariantViolation", e.what(), std::nullopt, kInternal};
    } catch (const std::exception& e) {
        info = {"InternalError", e.what(), std::nullopt, kInternal};
    }
    emit(inv, out, err, nullptr, &info);
    return info.code;
}

}  // namespace ordtype::cli
