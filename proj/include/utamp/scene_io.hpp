#pragma once

#include "utamp/perception.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace utamp {

/// Scene files are JSON with a {"format": "utamp-scene", "version": 1} header.
inline constexpr int kSceneFormatVersion = 1;

struct SceneFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scene scene_from_json(const std::string& text);
std::string scene_to_json(const Scene& scene);

Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

/// Whole-file read; throws std::runtime_error when the file cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace utamp
