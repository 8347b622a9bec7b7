#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logicon {

/// Base class for all errors raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree (e.g. multiplying a 3x2 by a 4x4).
struct shape_error : error {
    using error::error;
};

/// An index is outside the valid range of its container.
struct index_error : error {
    using error::error;
};

/// A request exceeds a hard enumeration limit (e.g. too many state bits).
struct capacity_error : error {
    using error::error;
};

/// A checked precondition does not hold (e.g. the point is not an equilibrium).
struct precondition_error : error {
    using error::error;
};

/// Text could not be parsed; `offset` is the byte position of the problem.
struct parse_error : error {
    std::size_t offset;
    parse_error(const std::string& what, std::size_t off)
        : error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

/// A synthesis problem has no solution; `agent` is the first blocking agent (0-based).
struct infeasible_error : error {
    std::size_t agent;
    infeasible_error(const std::string& what, std::size_t blocking_agent)
        : error(what), agent(blocking_agent) {}
};

/// Synthesis was asked for an input that no agent measures.
struct no_root_error : error {
    using error::error;
};

} // namespace logicon
