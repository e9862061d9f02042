#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "wickflow/analysis.hpp"
#include "wickflow/propagator.hpp"

namespace wickflow::io {

/// Scientific notation with 17 significant digits, '.' decimal separator.
std::string format_double(double v);

void write_field_csv(std::ostream& os, const ChaosField& field);
void write_trajectory_csv(std::ostream& os, const SolveReport& report);
void write_sup_norms_csv(std::ostream& os, const SolveReport& report);
void write_norm_report_csv(std::ostream& os, const NormReport& report);
void write_certificate_csv(std::ostream& os, const BoundCertificate& cert);
void write_mc_csv(std::ostream& os, const McMoments& mc);

/// Writes pre-rendered content, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace wickflow::io
