// io.hpp — File formats: CorrelationSeries CSV (`t,re,im` with a source/param
// header), tabulated spectral-density CSV (`E,J`), oscillator trajectory CSV
// (`t,n_expect,trace,purity`), and JSON documents for chain specs and GKSL
// reports.

#pragma once

#include <string>
#include <vector>

#include "jjbath/chain.hpp"
#include "jjbath/gksl.hpp"
#include "jjbath/types.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace jjb::io {

// Lines prepended (each as a `# ...` comment) before the standard header.
using HeaderLines = std::vector<std::string>;

std::string format_double(double v);

void write_series_csv(const std::string& path, const CorrelationSeries& series,
                      const HeaderLines& extra = {});
void write_spectral_csv(const std::string& path, const SpectralDensity& j, int n_points,
                        const HeaderLines& extra = {});
void write_trajectory_csv(const std::string& path, const gksl::Trajectory& traj,
                          const HeaderLines& extra = {});
void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows,
                     const HeaderLines& extra = {});
void write_text(const std::string& path, const std::string& content);

nlohmann::json profile_to_json(const chain::Profile& p);
chain::Profile profile_from_json(const nlohmann::json& j);

nlohmann::json chain_to_json(const chain::ContinuumChain& c);
chain::ContinuumChain chain_from_json(const nlohmann::json& j);

nlohmann::json chain_to_json(const chain::DiscreteChain& c);
chain::DiscreteChain discrete_chain_from_json(const nlohmann::json& j);

// `{kappa, lamb_shift, omega_b, zeta_m, criteria:{bm, secular}, units:"E_C0"}`
nlohmann::json gksl_report_json(const gksl::GkslResult& res);

}  // namespace jjb::io
