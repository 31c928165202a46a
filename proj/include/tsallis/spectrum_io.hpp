#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tsallis/types.hpp"

namespace tsallis {

struct SpectrumFile {
  std::vector<double> energies;
  std::string source_path;
};

/// Accepts either a JSON object {"energies": [...]} or plain text with one
/// number per line, optionally preceded by the header line "energy".
SpectrumFile parse_spectrum_text(std::string_view content, std::string source = "<memory>");

SpectrumFile read_spectrum_file(const std::string& path);

Spectrum parse_spectrum(const std::string& path);

}  // namespace tsallis
