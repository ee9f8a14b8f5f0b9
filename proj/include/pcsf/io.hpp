#pragma once

#include <string>

#include "pcsf/instance.hpp"

namespace pcsf {

enum class FileFormat { Json, StpExt };

// Parses instance bytes; format is detected from the content when not forced
// (STP header vs JSON object). Costs and penalties are parsed exactly.
PcInstance parse_instance(const std::string& content);
PcInstance parse_instance(const std::string& content, FileFormat format);

std::string serialize_instance(const PcInstance& inst, FileFormat format);

PcInstance load_instance(const std::string& path);
void save_instance(const PcInstance& inst, const std::string& path, FileFormat format);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pcsf
