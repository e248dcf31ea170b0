#pragma once
// Text formats.
//
// Profile file:
//     axis: a > b > c
//     2 x a > b > c
//     b > c > a
//
// Network file:
//     axis: a > b > c
//     mode: free            (optional; single-peaked otherwise)
//     0: a > b > c
//     1: b > a > c
//     0 -- 1
//
// Blank lines and '#' comments are ignored. Errors throw ParseError with the
// 1-based line number. serialize() output parses back to an equal value.

#include <iosfwd>
#include <string>
#include <string_view>

#include "spdiff/core.hpp"
#include "spdiff/diffusion.hpp"

namespace spdiff {

struct ProfileFile {
    Axis axis;
    Profile profile;

    friend bool operator==(const ProfileFile&, const ProfileFile&) = default;
};

/// "a > b > c" using the axis' candidate names.
std::string format_ranking(const Ranking& r, const Axis& axis);
/// Inverse of format_ranking; ParseError (line 0) on unknown names, ties or
/// repeated candidates.
Ranking parse_ranking(std::string_view text, const Axis& axis);

ProfileFile parse_profile(std::string_view text);
std::string serialize_profile(const Profile& p, const Axis& axis);

PreferenceNetwork parse_network(std::string_view text);
std::string serialize_network(const PreferenceNetwork& net);

/// JSON Lines: a header record (rule, scheduler, seed, sequence, axis,
/// voter ids, initial opinions) followed by one record per update event.
std::string serialize_trace(const Trace& trace, const PreferenceNetwork& net);
/// Parses a trace against the network it was recorded on.
Trace parse_trace(std::string_view text, const PreferenceNetwork& net);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace spdiff
