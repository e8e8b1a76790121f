#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace strop::workbench {

enum class Task { Betti, CohomologyRing, Hochschild, LoopRing, CactusValidate, CactusCompose, OracleCompare };

std::string task_name(Task t);
// Throws InvalidArgument on an unknown name.
Task parse_task(std::string_view name);

struct DegreeWindow {
  int lo = 0;
  int hi = 0;
  bool operator==(const DegreeWindow&) const = default;
};
// "a..b"; throws InvalidArgument.
DegreeWindow parse_window(std::string_view text);

// Job description. Input paths are kept as written and resolved against
// base_dir. The window is in Hochschild total degrees for hochschild and
// oracle-compare, in loop-homology degrees for loop-ring.
//
//   task: loop-ring
//   inputs: [../algebras/sphere2_f2.yaml]
//   ring: f2
//   window: [-2, 6]          # or "-2..6"
//   tensor_max: 4
//   normalized: true
//   formal: true
//   dimension: 2
//   permutation: [1, 0]      # cactus-compose: applied to the composite
//   inject_sign_fault: false # oracle-compare test fixture
struct JobManifest {
  Task task = Task::Betti;
  std::vector<std::string> inputs;
  std::filesystem::path base_dir;
  std::optional<std::string> ring;
  std::optional<DegreeWindow> window;
  std::optional<std::size_t> tensor_max;
  bool normalized = true;
  bool formal = false;
  std::optional<int> dimension;
  std::vector<std::size_t> permutation;
  bool inject_sign_fault = false;

  // Task-specific required fields, nonempty window, well-formed ring.
  // Throws InvalidArgument.
  void check() const;
  std::filesystem::path resolve(std::size_t i) const;
};

// Throws ParseError.
JobManifest parse_manifest(std::string_view text, std::filesystem::path base_dir = {});
JobManifest load_manifest_file(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

// Content-addressed store of result bodies. Entries are written to a
// temporary file and renamed into place, so readers never see partial
// entries and concurrent writers of one key leave one complete copy.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path entry(const std::string& key) const;

  // nullopt on a miss. A damaged entry is reported through `problem` and
  // treated as a miss.
  std::optional<std::string> load(const std::string& key, std::string* problem = nullptr) const;
  void store(const std::string& key, const std::string& body) const;

 private:
  std::filesystem::path dir_;
};

// STROP_CACHE_DIR when set and nonempty.
std::optional<std::filesystem::path> default_cache_dir();

struct RunOptions {
  std::optional<std::filesystem::path> cache_dir;
};

enum class CacheStatus { Off, Miss, Hit, Recomputed };

struct ResultDocument {
  Task task = Task::Betti;
  std::string cache_key;
  // JSON text of everything except run information; identical across runs
  // and cache paths for the same manifest and inputs.
  std::string canonical;
  std::string canonical_sha256;
  std::int64_t elapsed_us = 0;
  CacheStatus cache = CacheStatus::Off;
  std::vector<std::string> run_notes;

  // JSON with a trailing "run" object (timing, cache status) unless
  // with_run is false.
  std::string json(bool with_run = true) const;
  std::string table(bool with_run = true) const;
};

// Dispatches to the owning module. Module errors are rethrown with the same
// kind and the task name prefixed to the message.
ResultDocument run(const JobManifest& manifest, const RunOptions& options = {});

// Pipeline against the dense full-complex brute force. Requires an algebra
// of dimension ≤ 3 concentrated in degree 0, or of reduced dimension ≤ 2
// otherwise, and tensor_max ≤ 5 (the longest dense cochain); throws
// OracleScaleExceeded beyond that.
ResultDocument oracle_compare(const JobManifest& manifest, const RunOptions& options = {});

}  // namespace strop::workbench
