#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace fitsgeo {

/// Registers the viewer endpoints on `server`:
///   GET /scene.json  the scene document
///   GET /healthz     "ok"
///   GET /            index.html from `assets` when given, else a minimal
///                    built-in page listing the scene objects
/// Other files under `assets` are served statically. Only GET is routed.
void configure_view_server(httplib::Server& server, std::string scene_json,
                           const std::optional<std::filesystem::path>& assets = std::nullopt);

/// Minimal HTML page used when no viewer assets are installed.
std::string_view builtin_viewer_page();

}  // namespace fitsgeo
