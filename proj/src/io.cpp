#include "virn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "binio.hpp"
#include "virn/errors.hpp"

namespace virn {

namespace {

constexpr std::uint8_t kMagic[4] = {0x56, 0x49, 0x52, 0x4e};  // "VIRN"
constexpr std::uint8_t kVersion = 0x01;

void save_virn1(const LabeledSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(kMagic), 4);
  binio::put_u8(out, kVersion);
  binio::put_u32(out, static_cast<std::uint32_t>(set.size()));
  binio::put_u32(out, static_cast<std::uint32_t>(set.dim()));
  binio::put_u32(out, set.class_count());
  for (std::size_t i = 0; i < set.size(); ++i) {
    binio::put_u32(out, set[i].label);
    for (double v : set[i].x) binio::put_f32(out, static_cast<float>(v));
  }
  if (!out) throw Error("write failed for " + path.string());
}

LabeledSet load_virn1(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::uint8_t magic[4];
  for (auto& b : magic) b = binio::get_u8(in);
  if (std::memcmp(magic, kMagic, 4) != 0) throw BadMagic("not a VIRN embedding file");
  const std::uint8_t version = binio::get_u8(in);
  if (version != kVersion)
    throw VersionMismatch("unsupported VIRN version " + std::to_string(version));
  const std::uint32_t count = binio::get_u32(in);
  const std::uint32_t dim = binio::get_u32(in);
  const std::uint32_t classes = binio::get_u32(in);

  LabeledSet set(dim, classes);
  for (std::uint32_t s = 0; s < count; ++s) {
    const std::uint32_t label = binio::get_u32(in);
    if (label >= classes)
      throw LabelOutOfRange("label " + std::to_string(label) + " >= class count " +
                            std::to_string(classes));
    Vec x(dim);
    for (auto& v : x) {
      const float f = binio::get_f32(in);
      if (!std::isfinite(f)) throw NonFiniteValue("non-finite value in embedding file");
      v = static_cast<double>(f);
    }
    set.add(std::move(x), label);
  }
  if (in.peek() != std::char_traits<char>::eof())
    throw TruncatedFile("file length does not match the declared sample count");
  return set;
}

void save_csv(const LabeledSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "label";
  for (std::size_t j = 0; j < set.dim(); ++j) out << ",f" << j;
  out << "\n";
  char buf[64];
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << set[i].label;
    for (double v : set[i].x) {
      std::snprintf(buf, sizeof(buf), "%.9g", v);
      out << ',' << buf;
    }
    out << "\n";
  }
  if (!out) throw Error("write failed for " + path.string());
}

LabeledSet load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw TruncatedFile("empty CSV file");
  if (line.rfind("label", 0) != 0) throw BadMagic("CSV header must start with 'label'");
  std::size_t dim = 0;
  for (char ch : line)
    if (ch == ',') ++dim;

  struct Row {
    Vec x;
    std::uint32_t label;
  };
  std::vector<Row> rows;
  std::uint32_t max_label = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (!std::getline(ss, cell, ',')) throw TruncatedFile("short row at line " + std::to_string(line_no));
    Row row;
    try {
      row.label = static_cast<std::uint32_t>(std::stoul(cell));
    } catch (const std::exception&) {
      throw NonFiniteValue("unparsable label at line " + std::to_string(line_no));
    }
    row.x.reserve(dim);
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        throw NonFiniteValue("unparsable value at line " + std::to_string(line_no));
      }
      if (!std::isfinite(v)) throw NonFiniteValue("non-finite value at line " + std::to_string(line_no));
      row.x.push_back(v);
    }
    if (row.x.size() != dim) throw TruncatedFile("short row at line " + std::to_string(line_no));
    max_label = std::max(max_label, row.label);
    rows.push_back(std::move(row));
  }
  LabeledSet set(dim, max_label + 1);
  for (auto& row : rows) set.add(std::move(row.x), row.label);
  return set;
}

}  // namespace

EmbeddingFormat format_from_path(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? EmbeddingFormat::Csv : EmbeddingFormat::Virn1;
}

void save_embeddings(const LabeledSet& set, const std::filesystem::path& path,
                     EmbeddingFormat format) {
  if (format == EmbeddingFormat::Virn1)
    save_virn1(set, path);
  else
    save_csv(set, path);
}

LabeledSet load_embeddings(const std::filesystem::path& path, EmbeddingFormat format) {
  return format == EmbeddingFormat::Virn1 ? load_virn1(path) : load_csv(path);
}

}  // namespace virn
