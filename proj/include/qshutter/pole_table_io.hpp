// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>

#include "qshutter/barrier.hpp"

namespace qshutter {

/// Writes the table as a JSON document:
///   { "header": {"V0_eV":..., "d_nm":..., "m_ratio":..., "count_per_quadrant":...,
///                "argument_principle_count":..., "axis_pole_count":...},
///     "poles": [ {"n":..,"k_re":..,"k_im":..,"r_re":..,"r_im":..,"g_residual":..}, ... ] }
/// Floats carry 17 significant digits so a round trip is bit-exact.
void save_pole_table(const PoleTable& table, std::ostream& out);

PoleTable load_pole_table(std::istream& in);

/// True when the header of the JSON document in `text` matches the given
/// parameters, i.e. a cached file can be reused without recomputation.
bool pole_table_header_matches(const std::string& text, const BarrierParams& b,
                               int count_per_quadrant);

}  // namespace qshutter
