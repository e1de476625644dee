#pragma once

// ALT v1 text format for systems, element lists and coordinate maps.
//
//   ALT v1
//   p=<int> n=<int> dimV=<int>
//   meta seed=<int> rounds=<int>          (optional)
//   beta <i> <j> : <k_1> ... <k_n>        (i < j, nonzero entries only)
//   set <name>                            (certificates: starts an element list)
//   elem : <v_1> ... <v_dimV> | <w_1> ... <w_n>
//   map <name>                            (certificates: starts a coordinate map)
//   col : <x_1> ... <x_m>
//
// Blank lines and text after '#' are ignored.

#include "nilgen/alt_system.hpp"
#include "nilgen/baer_group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nilgen {

struct AltMeta {
    std::uint64_t seed = 0;
    std::size_t rounds = 0;

    bool operator==(const AltMeta&) const = default;
};

struct AltDocument {
    AltSystem sys;
    std::optional<AltMeta> meta;
    std::vector<std::pair<std::string, std::vector<GroupElement>>> sets;
    std::vector<std::pair<std::string, std::vector<FVector>>> maps; // columns

    // Throws ParseError (line 0) if the name is absent.
    const std::vector<GroupElement>& set(std::string_view name) const;
    const std::vector<FVector>& map(std::string_view name) const;
};

// Errors: ParseError with the offending line, BadPrime, NotAlternating.
AltDocument parse_document(std::string_view text);
AltSystem parse_system(std::string_view text);

std::string serialize_system(const AltSystem& sys, const std::optional<AltMeta>& meta = std::nullopt);
std::string serialize_document(const AltDocument& doc);

// Headerless files of `elem` lines and of `col` lines.
std::vector<GroupElement> parse_elements(std::string_view text, const AltSystem& host);
std::string serialize_elements(const std::vector<GroupElement>& xs);
std::vector<FVector> parse_columns(std::string_view text, const Field& f, std::size_t rows);
std::string serialize_columns(const FMatrix& m);

} // namespace nilgen
