#ifndef HMMNER_FILE_IO_H_
#define HMMNER_FILE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace hmmner {

// Throws Error(kIo) when the file cannot be read.
std::string ReadFile(const std::filesystem::path& path);

// Writes to a temporary sibling and renames it over `path`, so readers never
// observe a partial file. Throws Error(kIo).
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

}  // namespace hmmner

#endif  // HMMNER_FILE_IO_H_
