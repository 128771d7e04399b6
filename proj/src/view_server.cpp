#include "fitsgeo/view_server.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "httplib.h"

namespace fitsgeo {

namespace {

// Fallback page: lists the objects of /scene.json. The interactive viewer
// ships separately and is served from --assets.
constexpr std::string_view kBuiltinPage = R"html(<!doctype html>
<html>
<head>
<meta charset="utf-8">
<title>fitsgeo scene</title>
<style>
body { font-family: sans-serif; margin: 2em; }
td, th { padding: 0 1em; text-align: left; }
.swatch { display: inline-block; width: 1em; height: 1em; border: 1px solid #444; }
</style>
</head>
<body>
<h1 id="title">fitsgeo scene</h1>
<p>No viewer assets installed; showing the scene object list. Start
<code>fitsgeo view</code> with <code>--assets DIR</code> for the 3D viewer.</p>
<table id="objects"><tr><th>id</th><th>name</th><th>kind</th><th>color</th><th>opacity</th><th>triangles</th></tr></table>
<script>
fetch('/scene.json').then(r => r.json()).then(scene => {
  document.getElementById('title').textContent = scene.title || 'fitsgeo scene';
  const table = document.getElementById('objects');
  for (const o of scene.objects) {
    const row = table.insertRow();
    const rgb = o.rgb.map(c => Math.round(c * 255)).join(',');
    row.innerHTML = `<td>${o.surface_id}</td><td></td><td>${o.kind}</td>` +
      `<td><span class="swatch" style="background: rgb(${rgb})"></span> ${o.color}</td>` +
      `<td>${o.opacity}</td><td>${o.mesh.triangles.length / 3}</td>`;
    row.cells[1].textContent = o.name;
  }
}).catch(e => { document.body.append('failed to load scene: ' + e); });
</script>
</body>
</html>
)html";

}  // namespace

std::string_view builtin_viewer_page() { return kBuiltinPage; }

void configure_view_server(httplib::Server& server, std::string scene_json,
                           const std::optional<std::filesystem::path>& assets) {
  auto scene = std::make_shared<const std::string>(std::move(scene_json));
  server.Get("/scene.json", [scene](const httplib::Request&, httplib::Response& res) {
    res.set_content(*scene, "application/json");
  });
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok\n", "text/plain");
  });

  std::string index(kBuiltinPage);
  if (assets) {
    std::ifstream in(*assets / "index.html", std::ios::binary);
    if (in) {
      std::ostringstream ss;
      ss << in.rdbuf();
      index = ss.str();
    }
    server.set_mount_point("/", assets->string());
  }
  server.Get("/", [index = std::move(index)](const httplib::Request&, httplib::Response& res) {
    res.set_content(index, "text/html; charset=utf-8");
  });
}

}  // namespace fitsgeo
