#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "interkernel/dsl.hpp"
#include "interkernel/term.hpp"
#include "interkernel/trace.hpp"

namespace helpers {

inline interkernel::Interaction I(const std::string& text) { return interkernel::parse_interaction(text); }
inline interkernel::Trace T(const std::string& text) { return interkernel::parse_trace(text); }
inline interkernel::Position P(const std::string& text) { return interkernel::Position::parse(text); }

inline interkernel::TraceSet traces(std::initializer_list<const char*> texts) {
    interkernel::TraceSet out;
    for (const char* t : texts) out.insert(interkernel::parse_trace(t));
    return out;
}

inline std::vector<interkernel::Position> positions_of(std::initializer_list<const char*> texts) {
    std::vector<interkernel::Position> out;
    for (const char* t : texts) out.push_back(interkernel::Position::parse(t));
    return out;
}

}  // namespace helpers
