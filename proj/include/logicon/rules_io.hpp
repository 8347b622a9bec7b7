#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bool_expr.hpp"
#include "decision.hpp"
#include "errors.hpp"
#include "parse.hpp"
#include "simulator.hpp"
#include "synth_linear.hpp"
#include "synth_robust.hpp"

namespace logicon {

/// One subterm's worth of a rule file: which input it tracks, through which
/// literal shape, how it was synthesized, and every agent's update rule.
struct rule_section {
    std::size_t input = 0;
    chi_op chi = chi_op::identity;
    enum class mode_t { linear, robust } mode = mode_t::linear;
    std::size_t rounds = 0; // linear only
    std::size_t gamma = 0;  // robust only
    std::vector<std::size_t> unreachable; // sorted, 0-based; linear only
    std::vector<bool_expr> updates;       // one per agent
};

/// A full rule file: network dimensions plus one section per subterm.
struct rule_file {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<rule_section> sections;
};

inline rule_section make_rule_section(const linear_system& sys, chi_op chi) {
    rule_section sec;
    sec.input = sys.input;
    sec.chi = chi;
    sec.mode = rule_section::mode_t::linear;
    sec.rounds = sys.rounds;
    sec.unreachable = sys.unreachable;
    sec.updates = to_bool_map(sys).components;
    return sec;
}

inline rule_section make_rule_section(const robust_system& sys, chi_op chi) {
    rule_section sec;
    sec.input = sys.input;
    sec.chi = chi;
    sec.mode = rule_section::mode_t::robust;
    sec.gamma = sys.gamma;
    sec.updates = to_bool_map(sys).components;
    return sec;
}

/// Turns a parsed section back into runnable subterm dynamics.
inline subterm_system to_subterm_system(const rule_section& sec, std::size_t n, std::size_t m) {
    subterm_system sub;
    sub.update = bool_map(n, m, sec.updates);
    sub.input = sec.input;
    sub.chi = sec.chi;
    sub.unreachable = sec.unreachable;
    return sub;
}

inline void write_rules(std::ostream& out, const rule_file& rf) {
    out << "logicon-rules v1\n";
    out << "# agents and inputs are numbered from 1\n";
    out << "agents " << rf.n << '\n';
    out << "inputs " << rf.m << '\n';
    for (std::size_t h = 0; h < rf.sections.size(); ++h) {
        const rule_section& sec = rf.sections[h];
        out << "subterm " << (h + 1) << " input " << (sec.input + 1) << " chi "
            << (sec.chi == chi_op::negation ? "not" : "id") << " mode ";
        if (sec.mode == rule_section::mode_t::linear)
            out << "linear rounds " << sec.rounds;
        else
            out << "robust gamma " << sec.gamma;
        out << '\n';
        if (!sec.unreachable.empty()) {
            out << "unreachable";
            for (std::size_t i : sec.unreachable) out << ' ' << (i + 1);
            out << '\n';
        }
        const bool_expr bare = bool_expr::input_var(sec.input);
        for (std::size_t i = 0; i < sec.updates.size(); ++i) {
            out << (i + 1) << ": ";
            if (sec.updates[i] == bare)
                out << 'u';
            else
                out << sec.updates[i];
            out << '\n';
        }
        out << "end\n";
    }
}

namespace detail {

// Line-oriented reader that remembers where each line started, so errors can
// point at a byte offset in the stream.
class rule_reader {
public:
    explicit rule_reader(std::istream& in) : in_(in) {}

    // Next meaningful line (skips blanks and # comments); false at EOF.
    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            line_start_ = consumed_;
            consumed_ += line.size() + 1;
            ++line_no_;
            std::size_t b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            std::size_t e = line.find_last_not_of(" \t\r");
            line = line.substr(b, e - b + 1);
            if (line[0] == '#') continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error("rule file line " + std::to_string(line_no_) + ": " + what, line_start_);
    }

private:
    std::istream& in_;
    std::size_t consumed_ = 0;
    std::size_t line_start_ = 0;
    std::size_t line_no_ = 0;
};

inline std::size_t expect_count(rule_reader& r, const std::string& line, const std::string& key) {
    std::istringstream s(line);
    std::string word;
    long long value = -1;
    if (!(s >> word >> value) || word != key || value < 1 || (s >> word))
        r.fail("expected '" + key + " <count>'");
    return static_cast<std::size_t>(value);
}

} // namespace detail

inline rule_file read_rules(std::istream& in) {
    detail::rule_reader reader(in);
    std::string line;

    if (!reader.next(line) || line != "logicon-rules v1")
        reader.fail("expected header 'logicon-rules v1'");
    if (!reader.next(line)) reader.fail("missing 'agents' line");
    rule_file rf;
    rf.n = detail::expect_count(reader, line, "agents");
    if (!reader.next(line)) reader.fail("missing 'inputs' line");
    rf.m = detail::expect_count(reader, line, "inputs");

    while (reader.next(line)) {
        std::istringstream s(line);
        std::string word;
        s >> word;
        if (word != "subterm") reader.fail("expected a 'subterm' section, got '" + line + "'");

        rule_section sec;
        long long index = 0, input = 0;
        std::string chi, mode;
        if (!(s >> index >> word >> input) || word != "input" || input < 1 ||
            static_cast<std::size_t>(input) > rf.m)
            reader.fail("expected 'subterm <k> input <j>' with a valid input");
        if (index != static_cast<long long>(rf.sections.size()) + 1)
            reader.fail("subterm sections must be numbered consecutively from 1");
        sec.input = static_cast<std::size_t>(input) - 1;
        if (!(s >> word >> chi) || word != "chi" || (chi != "id" && chi != "not"))
            reader.fail("expected 'chi id' or 'chi not'");
        sec.chi = chi == "not" ? chi_op::negation : chi_op::identity;
        if (!(s >> word >> mode) || word != "mode" || (mode != "linear" && mode != "robust"))
            reader.fail("expected 'mode linear' or 'mode robust'");
        long long value = -1;
        if (mode == "linear") {
            sec.mode = rule_section::mode_t::linear;
            if (!(s >> word >> value) || word != "rounds" || value < 0)
                reader.fail("linear sections need 'rounds <count>'");
            sec.rounds = static_cast<std::size_t>(value);
        } else {
            sec.mode = rule_section::mode_t::robust;
            if (!(s >> word >> value) || word != "gamma" || value < 0)
                reader.fail("robust sections need 'gamma <count>'");
            sec.gamma = static_cast<std::size_t>(value);
        }
        if (s >> word) reader.fail("trailing tokens after the subterm header");

        sec.updates.assign(rf.n, bool_expr());
        std::vector<bool> seen(rf.n, false);
        bool closed = false;
        while (reader.next(line)) {
            if (line == "end") {
                closed = true;
                break;
            }
            if (line.rfind("unreachable", 0) == 0) {
                std::istringstream us(line);
                us >> word;
                long long agent;
                while (us >> agent) {
                    if (agent < 1 || static_cast<std::size_t>(agent) > rf.n)
                        reader.fail("unreachable agent out of range");
                    sec.unreachable.push_back(static_cast<std::size_t>(agent) - 1);
                }
                continue;
            }
            const std::size_t colon = line.find(':');
            if (colon == std::string::npos) reader.fail("expected '<agent>: <expression>'");
            std::size_t agent = 0;
            try {
                std::size_t used = 0;
                agent = std::stoull(line.substr(0, colon), &used);
                if (used != colon) throw std::invalid_argument("junk");
            } catch (const std::exception&) {
                reader.fail("expected an agent number before ':'");
            }
            if (agent < 1 || agent > rf.n) reader.fail("agent number out of range");
            if (seen[agent - 1]) reader.fail("duplicate rule for agent " + std::to_string(agent));
            seen[agent - 1] = true;
            parse_options opts;
            opts.allow_state = true;
            opts.allow_bare_input = true;
            opts.bare_input_index = sec.input;
            try {
                sec.updates[agent - 1] = parse_bool_expr(line.substr(colon + 1), opts);
            } catch (const parse_error& e) {
                reader.fail("agent " + std::to_string(agent) + ": " + e.what());
            }
        }
        if (!closed) reader.fail("section is missing its 'end' line");
        for (std::size_t i = 0; i < rf.n; ++i)
            if (!seen[i]) reader.fail("no rule given for agent " + std::to_string(i + 1));
        std::sort(sec.unreachable.begin(), sec.unreachable.end());
        rf.sections.push_back(std::move(sec));
    }
    if (rf.sections.empty()) reader.fail("rule file has no subterm sections");
    return rf;
}

} // namespace logicon
