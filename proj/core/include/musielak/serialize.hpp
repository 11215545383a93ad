#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "musielak/grid.hpp"
#include "musielak/modular.hpp"
#include "musielak/nfunction.hpp"
#include "musielak/norms.hpp"
#include "musielak/pipeline.hpp"

namespace musielak {

/// Shortest round-trip text of a double ("%.17g"); nan/inf spelled out.
std::string format_double(double v);

nlohmann::json to_json(const NFunctionReport& report);
nlohmann::json to_json(const ModularResult& result);
nlohmann::json to_json(const NormResult& result);
nlohmann::json to_json(const HolderResult& result);
nlohmann::json to_json(const Region& region);
nlohmann::json to_json(const SmoothingParams& params);
nlohmann::json to_json(const ConvergenceReport& report);
/// rho is summarised (spec, max |rho|); write it with write_csv for the values.
nlohmann::json to_json(const ApproximationReport& report);
nlohmann::json to_json(const CounterexampleReport& report);

/// Header "# dim,lo...,hi...,n,h" then one line per node: coordinates, value.
void write_csv(std::ostream& os, const GridFunction& gf);
/// Columns param,modular,norm,error_estimate.
void write_csv(std::ostream& os, const ConvergenceReport& report);
/// Columns n,h,value.
void write_csv(std::ostream& os, const ModularResult& result);

}  // namespace musielak
