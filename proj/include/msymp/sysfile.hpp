#pragma once

#include <map>
#include <optional>
#include <string>

#include "msymp/system.hpp"

namespace msymp {

/// Parsed system-definition file: a chart declaration, exactly one of
/// theta / omega / coordinate_data, and named sections, vector fields,
/// ansaetze and conserved-quantity candidates.
///
/// Line-oriented block format, '#' comments, blocks closed by 'end':
///
///   chart
///     base t
///     fiber q
///     fiber p
///   end
///
///   theta                      # records are  <expr> : <basis names>
///     p : q
///     -(q^2 + p^2)/2 : t
///   end
///
///   coordinate_data            # alternative to theta/omega
///     F q t = -p
///     E = (q^2 + p^2)/2
///   end
///
///   section exact
///     q = cos(t)
///     p = -sin(t)
///   end
///
///   vectorfield ddt
///     t = 1
///   end
///
///   ansatz hamilton            # entries are  <fiber> <base> = <expr>
///     q t = p
///     p t = -q
///   end
///
///   conserved negH
///     -(q^2 + p^2)/2 :
///   end
struct SystemFile {
    ChartPtr chart;
    std::optional<DiffForm> theta;
    std::optional<DiffForm> omega;
    std::optional<CoordinateData> data;
    std::map<std::string, Section> sections;
    std::map<std::string, MultiVector> vectorfields;
    std::map<std::string, DecomposableAnsatz> ansaetze;
    std::map<std::string, DiffForm> conserved;
};

SystemFile parse_system_file(const std::string& text);

PremultisymplecticSystem build_system(const SystemFile& f);

}  // namespace msymp
