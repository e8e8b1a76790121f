#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "strop/error.hpp"
#include "strop/workbench/workbench.hpp"

namespace wb = strop::workbench;

namespace {

std::vector<std::size_t> parse_permutation(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw strop::InvalidArgument("permutation '" + text + "' is not a comma-separated list of indices");
    out.push_back(std::stoull(item));
  }
  return out;
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw strop::InvalidArgument("cannot write " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact string topology workbench"};
  std::string task, manifest_path, ring, window, emit = "json", output, cache_dir, permutation;
  std::vector<std::string> inputs;
  std::optional<std::size_t> tensor_max;
  std::optional<int> dimension;
  bool normalized = false, unnormalized = false, formal = false, no_cache = false, no_timing = false, fault = false;

  app.add_option("task", task,
                 "betti | cohomology-ring | hochschild | loop-ring | cactus-validate | cactus-compose | oracle-compare; "
                 "optional with --manifest");
  app.add_option("--manifest", manifest_path, "job manifest (YAML)");
  app.add_option("--input", inputs, "input file; repeatable, replaces the manifest's inputs");
  app.add_option("--ring", ring, "coefficient ring: f2, f<p>, q, z");
  app.add_option("--window", window, "degree window a..b");
  app.add_option("--tensor-max", tensor_max, "maximal tensor length S");
  app.add_flag("--normalized", normalized, "use the normalized complex (default)");
  app.add_flag("--unnormalized", unnormalized, "use the full complex");
  app.add_flag("--formal", formal, "loop-ring input is a formal model algebra");
  app.add_option("--dimension", dimension, "manifold dimension for a formal model");
  app.add_option("--permutation", permutation, "cactus-compose: relabel the result, e.g. 1,0");
  app.add_flag("--inject-sign-fault", fault, "oracle-compare: flip one sign of the pipeline differential");
  app.add_option("--cache-dir", cache_dir, "result cache directory (default: $STROP_CACHE_DIR)");
  app.add_flag("--no-cache", no_cache, "do not read or write the cache");
  app.add_option("--emit", emit, "output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--output", output, "also write the document to this file");
  app.add_flag("--no-timing", no_timing, "leave out run information (timing, cache status)");
  CLI11_PARSE(app, argc, argv);

  try {
    wb::JobManifest m;
    if (!manifest_path.empty()) {
      m = wb::load_manifest_file(manifest_path);
      if (!task.empty() && wb::task_name(m.task) != task)
        throw strop::InvalidArgument("manifest is for task " + wb::task_name(m.task) + ", not " + task);
    } else {
      if (task.empty()) throw strop::InvalidArgument("a task or a manifest is required");
      m.task = wb::parse_task(task);
    }
    if (!inputs.empty()) {
      m.inputs = inputs;
      m.base_dir.clear();
    }
    if (!ring.empty()) m.ring = ring;
    if (!window.empty()) m.window = wb::parse_window(window);
    if (tensor_max) m.tensor_max = tensor_max;
    if (normalized && unnormalized) throw strop::InvalidArgument("--normalized and --unnormalized conflict");
    if (normalized) m.normalized = true;
    if (unnormalized) m.normalized = false;
    if (formal) m.formal = true;
    if (dimension) m.dimension = dimension;
    if (!permutation.empty()) m.permutation = parse_permutation(permutation);
    if (fault) m.inject_sign_fault = true;

    wb::RunOptions opts;
    if (!no_cache) opts.cache_dir = cache_dir.empty() ? wb::default_cache_dir() : std::filesystem::path(cache_dir);
    auto doc = wb::run(m, opts);
    for (const auto& note : doc.run_notes) std::cerr << "warning: " << note << "\n";
    const auto text = emit == "table" ? doc.table(!no_timing) : doc.json(!no_timing);
    if (!output.empty()) write_atomically(output, text);
    std::cout << text;
    return 0;
  } catch (const strop::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
