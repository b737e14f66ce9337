#pragma once

#include <filesystem>

#include "virn/stream.hpp"

namespace virn {

enum class EmbeddingFormat { Virn1, Csv };

// Picks the format from the file extension: ".csv" is text, everything else
// is the VIRN1 binary layout.
EmbeddingFormat format_from_path(const std::filesystem::path& path);

// VIRN1: magic "VIRN", version 0x01, u32 LE {sample_count, dim, class_count},
// then records of u32 label + dim f32 LE. Values are stored in 32-bit
// precision; everything in memory stays 64-bit.
void save_embeddings(const LabeledSet& set, const std::filesystem::path& path,
                     EmbeddingFormat format);

// Loading validates magic, version, label range, and finiteness, and throws
// before returning anything on a short or inconsistent file.
LabeledSet load_embeddings(const std::filesystem::path& path, EmbeddingFormat format);

}  // namespace virn
