#pragma once

#include "selfloc/protocol.hpp"

#include <string>
#include <string_view>

namespace selfloc {

/// Parses a protocol document (JSON with rational-string probabilities)
/// and validates it. Errors name the offending path: SyntaxError for
/// malformed or mis-typed documents, RationalFormatError for decimal-float
/// probabilities, then any validation error.
///
/// Document shape:
///   {
///     "format": 1,
///     "name": "...",
///     "outcomes": [{"label": "...", "prob": "p/q"}, ...],
///     "agents": ["...", ...],
///     "schedules": {"agent": {"outcome": ["day", ...], ...}, ...},
///     "questions": [{"agent": "...", "proposition": ["outcome", ...]}, ...]
///   }
ValidatedProtocol parse_protocol(std::string_view text);

/// Canonical serialization: fixed key order, reduced rationals, schedules
/// keyed in protocol agent/outcome order, 2-space indentation, trailing
/// newline. Byte-stable across runs and platforms, so
/// serialize(parse(serialize(p))) == serialize(p).
std::string serialize_protocol(const ValidatedProtocol& p);

/// Reads a protocol document from a file path. File-level failures are
/// reported as SyntaxError naming the path.
ValidatedProtocol load_protocol_file(const std::string& path);

} // namespace selfloc
