#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "speechre/types.hpp"

namespace speechre {

// JSONL manifest: one header object ({"kind":"manifest",...}) followed by one
// {"kind":"instance",...} object per line. UTF-8, "\n" separated, no BOM.
// Absent optional fields are omitted rather than written as null.

Manifest read_manifest(const std::filesystem::path& path);
Manifest parse_manifest(std::istream& in);

void write_manifest(const Manifest& m, const std::filesystem::path& path);
void write_manifest(const Manifest& m, std::ostream& out);
std::string to_jsonl(const Manifest& m);

/// Single-instance codec shared with ingestion and the CLI.
std::string instance_to_json(const RelationInstance& inst);
RelationInstance instance_from_json(std::string_view line);

std::string triplets_to_json(const std::vector<Triplet>& triplets);

/// Writes to a sibling temporary file and renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace speechre
