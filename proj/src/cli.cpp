#include "fitsgeo/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"

#include "fitsgeo/error.hpp"
#include "fitsgeo/number_format.hpp"
#include "fitsgeo/phits_export.hpp"
#include "fitsgeo/phits_import.hpp"
#include "fitsgeo/scene.hpp"
#include "fitsgeo/snake.hpp"
#include "fitsgeo/view_server.hpp"

namespace fitsgeo {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  f << content;
  if (!f) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

void print_diagnostics(const std::vector<Diagnostic>& ds, std::ostream& err) {
  for (const auto& d : ds) err << format_diagnostic(d) << "\n";
}

// Loads the model and reports diagnostics; returns nullopt when the model
// has errors (already reported).
std::optional<Model> load_valid(const std::string& path, const MaterialDb& db, std::ostream& err) {
  auto loaded = load_any_model(path, db);
  print_diagnostics(loaded.diagnostics, err);
  if (has_errors(loaded.diagnostics)) return std::nullopt;
  return std::move(loaded.model);
}

MaterialDb make_db(const std::vector<std::string>& extra) {
  MaterialDb db = default_material_db();
  for (const auto& p : extra) db.merge_file(p);
  return db;
}

}  // namespace

LoadedModel load_any_model(const std::filesystem::path& path, const MaterialDb& db) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_model_doc(text, db);
  auto imported = parse_input(text);
  LoadedModel out{std::move(imported.model), std::move(imported.diagnostics)};
  if (!has_errors(out.diagnostics)) {
    auto more = validate_model(out.model);
    out.diagnostics.insert(out.diagnostics.end(), more.begin(), more.end());
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Define, check, visualize and export PHITS geometry"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::vector<std::string> db_files;
  app.add_option("--materials", db_files, "Extra material database files")->check(CLI::ExistingFile);

  // validate
  std::string model_path;
  auto* validate = app.add_subcommand("validate", "Check a model document or PHITS deck");
  validate->add_option("model", model_path, "Model document (.json) or PHITS input")->required();

  // export
  std::string output;
  std::string sections = "material,surface,cell";
  std::string header_comment;
  auto* exp = app.add_subcommand("export", "Write PHITS [Material]/[Surface]/[Cell] sections");
  exp->add_option("model", model_path)->required();
  exp->add_option("-o,--output", output, "Output file (default: stdout)");
  exp->add_option("--sections", sections, "Comma list of material, surface, cell");
  exp->add_option("--comment", header_comment, "Extra header comment");

  // volume
  int cell_id = 0;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::vector<double> box;
  unsigned threads = 0;
  auto* vol = app.add_subcommand("volume", "Monte Carlo volume of a cell");
  vol->add_option("model", model_path)->required();
  vol->add_option("--cell", cell_id, "Cell id")->required();
  vol->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
  vol->add_option("--seed", seed, "RNG seed");
  vol->add_option("--box", box, "Sampling box: xmin xmax ymin ymax zmin zmax")->expected(6);
  vol->add_option("--threads", threads, "Worker threads (0 = all cores)");

  // scene
  int resolution = 24;
  bool labels = false;
  std::optional<double> opacity;
  auto* scene_cmd = app.add_subcommand("scene", "Write the viewer scene document");
  scene_cmd->add_option("model", model_path)->required();
  scene_cmd->add_option("-o,--output", output, "Output file (default: stdout)");
  scene_cmd->add_option("--resolution", resolution, "Tessellation resolution (>= 3)");
  scene_cmd->add_flag("--labels", labels, "Label every surface at its centre");
  scene_cmd->add_option("--opacity", opacity, "Override every object's opacity")->check(CLI::Range(0.0, 1.0));

  // view
  int port = 8080;
  std::string host = "127.0.0.1";
  bool open_browser = false;
  std::string assets;
  auto* view = app.add_subcommand("view", "Serve the scene to the browser viewer");
  view->add_option("model", model_path)->required();
  view->add_option("--port", port, "TCP port");
  view->add_option("--host", host, "Bind address");
  view->add_flag("--open", open_browser, "Open a browser tab");
  view->add_option("--assets", assets, "Directory with the viewer's static files")->check(CLI::ExistingDirectory);
  view->add_option("--resolution", resolution, "Tessellation resolution (>= 3)");
  view->add_flag("--labels", labels, "Label every surface at its centre");
  view->add_option("--opacity", opacity, "Override every object's opacity")->check(CLI::Range(0.0, 1.0));

  // materials
  std::string material_name;
  auto* mats = app.add_subcommand("materials", "Inspect the material database");
  mats->require_subcommand(1);
  auto* mats_list = mats->add_subcommand("list", "List database entries");
  auto* mats_show = mats->add_subcommand("show", "Show one entry");
  mats_show->add_option("name", material_name)->required();

  // example
  SnakeParams snake;
  auto* example = app.add_subcommand("example", "Generate example model documents");
  example->require_subcommand(1);
  auto* snake_cmd = example->add_subcommand("snake", "Sphere-segment snake with a hat");
  snake_cmd->add_option("-o,--output", output, "Output file (default: stdout)");
  snake_cmd->add_option("--segments", snake.n_segments, "Number of segments")->check(CLI::Range(2, 100000));
  snake_cmd->add_option("--x-max", snake.x_max, "Length along x")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    const MaterialDb db = make_db(db_files);

    if (*validate) {
      auto loaded = load_any_model(model_path, db);
      print_diagnostics(loaded.diagnostics, err);
      std::size_t errors = 0, warnings = 0;
      for (const auto& d : loaded.diagnostics) (d.severity == Severity::Error ? errors : warnings)++;
      out << model_path << ": " << errors << " error(s), " << warnings << " warning(s)\n";
      return errors ? kExitValidation : kExitOk;
    }

    if (*exp) {
      ExportFlags flags{false, false, false, std::nullopt};
      std::stringstream ss(sections);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item == "material") flags.include_material = true;
        else if (item == "surface") flags.include_surface = true;
        else if (item == "cell") flags.include_cell = true;
        else if (!item.empty()) {
          err << "unknown section '" << item << "' (expected material, surface, cell)\n";
          return kExitFailure;
        }
      }
      if (!header_comment.empty()) flags.header_comment = header_comment;
      const auto model = load_valid(model_path, db, err);
      if (!model) return kExitValidation;
      write_output(output, export_input(*model, flags), out);
      return kExitOk;
    }

    if (*vol) {
      const auto model = load_valid(model_path, db, err);
      if (!model) return kExitValidation;
      VolumeOptions opts;
      opts.samples = samples;
      opts.seed = seed;
      opts.threads = threads;
      if (!box.empty()) opts.box = Aabb(Vec3(box[0], box[2], box[4]), Vec3(box[1], box[3], box[5]));
      const auto r = mc_cell_volume(*model, cell_id, opts);
      out << "{\"cell\":" << cell_id << ",\"estimate\":" << format_number(r.estimate)
          << ",\"std_error\":" << format_number(r.std_error) << ",\"hits\":" << r.hits
          << ",\"samples\":" << r.samples << ",\"seed\":" << r.seed << "}\n";
      return kExitOk;
    }

    if (*scene_cmd || *view) {
      const auto model = load_valid(model_path, db, err);
      if (!model) return kExitValidation;
      SceneOptions opts;
      opts.resolution = resolution;
      opts.labels = labels;
      opts.opacity_override = opacity;
      const std::string doc = write_scene(build_scene(*model, opts));
      if (*scene_cmd) {
        write_output(output, doc, out);
        return kExitOk;
      }
      httplib::Server server;
      configure_view_server(server, doc,
                            assets.empty() ? std::nullopt : std::optional<std::filesystem::path>(assets));
      if (!server.bind_to_port(host, port)) {
        err << "cannot bind " << host << ":" << port << "\n";
        return kExitFailure;
      }
      const std::string url = "http://" + host + ":" + std::to_string(port) + "/";
      out << "serving " << model_path << " at " << url << std::endl;
      if (open_browser) {
        const std::string cmd = "xdg-open '" + url + "' >/dev/null 2>&1 &";
        if (std::system(cmd.c_str()) != 0) err << "could not open a browser; visit " << url << "\n";
      }
      server.listen_after_bind();
      return kExitOk;
    }

    if (*mats_list) {
      for (const auto& [name, entry] : db.entries())
        out << name << "  " << format_number(entry.material.density) << " g/cc  "
            << to_string(entry.material.ratio_mode) << "\n";
      return kExitOk;
    }
    if (*mats_show) {
      const Material m = material_from_db(db, material_name, 1);
      out << "name: " << m.name << "\n"
          << "density: " << format_number(m.density) << " g/cc\n"
          << "mode: " << to_string(m.ratio_mode) << "\n"
          << "gas: " << (m.gas ? "yes" : "no") << "\n"
          << "color: " << m.color << "\n"
          << "source: " << db.find(material_name)->provenance << "\n"
          << "composition:\n";
      for (const auto& c : m.composition) out << "  " << c.species << " " << format_number(c.ratio) << "\n";
      return kExitOk;
    }
    if (*snake_cmd) {
      write_output(output, write_model_doc(example_snake(snake, db)), out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace fitsgeo
