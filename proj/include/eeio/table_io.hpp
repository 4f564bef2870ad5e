#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "eeio/economy.hpp"

namespace eeio {

// Table layout (comma separated, first row header):
//
//   sector,S1,S2,...,Sn,D[,T]
//   S1,c11,c12,...,c1n,d1[,t1]
//   ...
//   V,v1,...,vn[,,]        optional
//   T,t1,...,tn[,,]        optional
//
// The first header cell is free text. Rows V and T leave the D/T cells empty.
// When T appears both as a column and as a row the two must agree within
// tol_rel.
//
// Emission file:
//
//   sector,<emission unit>
//   S2,10.5
//   S1,20
//
// Rows are matched to the table by label, in any order.

Economy parse_table(std::istream& in, const BuildPolicy& policy = {},
                    std::string_view source = "<table>");
Economy parse_table(const std::filesystem::path& path, const BuildPolicy& policy = {});

EmissionAccount parse_emissions(std::istream& in, const Economy& econ,
                                std::string_view source = "<emissions>");
EmissionAccount parse_emissions(const std::filesystem::path& path, const Economy& econ);

/// Writes the full layout (T column plus V and T rows) with 17 significant
/// digits, so parse_table(write_table(e)) == e.
void write_table(std::ostream& out, const Economy& econ);
void write_emissions(std::ostream& out, const Economy& econ, const EmissionAccount& acct);

void write_table(const std::filesystem::path& path, const Economy& econ);
void write_emissions(const std::filesystem::path& path, const Economy& econ,
                     const EmissionAccount& acct);

}  // namespace eeio
