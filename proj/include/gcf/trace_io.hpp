#pragma once

#include <string>
#include <string_view>

#include "gcf/geodesic.hpp"

namespace gcf::io {

/// Pretty-printed JSON; rationals as "num/den", integers as JSON numbers when
/// they fit in 64 bits and as decimal strings otherwise. Key order is fixed,
/// so parse followed by emit reproduces the bytes.
std::string to_json(const Trace& trace);
/// Throws ParseError on malformed input.
Trace trace_from_json(std::string_view text);

/// One convergent per row: q,p1..pd,err2,quality,t_lo,t_hi.
std::string to_csv(const Trace& trace);
std::string to_table(const Trace& trace);

}  // namespace gcf::io
