#include "hpfire/document.hpp"

#include <fstream>
#include <sstream>

namespace hpfire {

NumericMode document_mode(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("mode")) throw DocumentError("mode", "missing required field");
  const auto& mode = doc["mode"];
  if (mode == "rational") return NumericMode::Rational;
  if (mode == "float") return NumericMode::Float;
  throw DocumentError("mode", "expected \"rational\" or \"float\"");
}

AnySystem load(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError("", std::string("malformed JSON: ") + e.what());
  }
  if (document_mode(doc) == NumericMode::Rational) return from_json<Rational>(doc);
  return from_json<double>(doc);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

AnySystem load_file(const std::filesystem::path& path) {
  return load(read_text_file(path));
}

}  // namespace hpfire
