#include "tsallis/spectrum_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tsallis/error.hpp"

namespace tsallis {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_json(std::string_view content, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, source + ": invalid JSON at byte " + std::to_string(e.byte));
  }
  if (!doc.is_object() || !doc.contains("energies") || !doc["energies"].is_array()) {
    throw Error(ErrorCode::ParseError, source + ": expected an object with an \"energies\" array");
  }
  std::vector<double> energies;
  const auto& arr = doc["energies"];
  energies.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw Error(ErrorCode::ParseError, source + ": energies[" + std::to_string(i) + "] is not a number");
    }
    energies.push_back(arr[i].get<double>());
  }
  return energies;
}

std::vector<double> parse_lines(std::string_view content, const std::string& source) {
  std::vector<double> energies;
  std::size_t line_no = 0;
  bool first = true;
  while (!content.empty()) {
    const auto nl = content.find('\n');
    std::string_view line = trim(content.substr(0, nl));
    content = nl == std::string_view::npos ? std::string_view{} : content.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (first && line == "energy") {
      first = false;
      continue;
    }
    first = false;
    if (line.front() == '+') line.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      throw Error(ErrorCode::ParseError,
                  source + ": line " + std::to_string(line_no) + ": cannot parse '" + std::string(line) +
                      "' as a number");
    }
    energies.push_back(value);
  }
  return energies;
}

}  // namespace

SpectrumFile parse_spectrum_text(std::string_view content, std::string source) {
  const auto body = trim(content);
  SpectrumFile file;
  file.energies = !body.empty() && body.front() == '{' ? parse_json(body, source) : parse_lines(content, source);
  file.source_path = std::move(source);
  if (file.energies.empty()) throw Error(ErrorCode::EmptySpectrum, file.source_path + ": no energy levels");
  return file;
}

SpectrumFile read_spectrum_file(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, "spectrum file not found: " + path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open spectrum file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spectrum_text(buf.str(), path);
}

Spectrum parse_spectrum(const std::string& path) { return make_spectrum(read_spectrum_file(path).energies); }

}  // namespace tsallis
