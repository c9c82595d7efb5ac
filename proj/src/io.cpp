#include "stabma/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/stat.h>
#include <unistd.h>

#include "stabma/errors.hpp"

namespace stabma::io {

std::string to_csv(const Path& path) {
  std::string out = "index,t,value\n";
  char buf[96];
  for (std::size_t i = 0; i < path.values.size(); ++i) {
    const long long index = path.start_index + static_cast<long long>(i);
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n", index,
                  static_cast<double>(index) * path.dt, path.values[i]);
    out += buf;
  }
  return out;
}

Path parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line == "index,t,value",
          "csv: expected header 'index,t,value'");
  Path path;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    long long index = 0;
    double t = 0.0;
    double value = 0.0;
    char* end = nullptr;
    index = std::strtoll(line.c_str(), &end, 10);
    require(*end == ',', "csv: malformed row '" + line + "'");
    t = std::strtod(end + 1, &end);
    require(*end == ',', "csv: malformed row '" + line + "'");
    value = std::strtod(end + 1, &end);
    require(*end == '\0', "csv: malformed row '" + line + "'");
    if (first) {
      path.start_index = index;
      path.dt = index != 0 ? t / static_cast<double>(index) : 1.0;
      first = false;
    }
    path.values.push_back(value);
  }
  return path;
}

Path read_csv(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  require(in.good(), "cannot open '" + filename + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

std::string to_svg(const Path& path, const std::string& caption) {
  constexpr double W = 960.0, H = 360.0, left = 60.0, right = 20.0, top = 30.0, bottom = 40.0;
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\""
     << H - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << left << "\" y=\"20\" font-family=\"monospace\" font-size=\"13\">" << caption
     << "</text>\n";
  if (!path.values.empty()) {
    const auto [mn, mx] = std::minmax_element(path.values.begin(), path.values.end());
    const double lo = *mn;
    const double hi = *mx > *mn ? *mx : *mn + 1.0;
    const double n = static_cast<double>(std::max<std::size_t>(path.values.size() - 1, 1));
    os << "<text x=\"4\" y=\"" << top + 10 << "\" font-family=\"monospace\" font-size=\"11\">" << hi
       << "</text>\n";
    os << "<text x=\"4\" y=\"" << H - bottom << "\" font-family=\"monospace\" font-size=\"11\">" << lo
       << "</text>\n";
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"0.8\" points=\"";
    for (std::size_t i = 0; i < path.values.size(); ++i) {
      const double x = left + (W - left - right) * static_cast<double>(i) / n;
      const double y = H - bottom - (H - top - bottom) * (path.values[i] - lo) / (hi - lo);
      os << (i ? " " : "") << x << ',' << y;
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_file_atomic(const std::string& filename, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(filename);
  const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
  std::string tmpl = (dir / (".stabma-XXXXXX")).string();
  const int fd = ::mkstemp(tmpl.data());
  if (fd < 0)
    throw ValidationError("cannot write '" + filename + "': " + std::strerror(errno));
  std::size_t done = 0;
  while (done < content.size()) {
    const ssize_t n = ::write(fd, content.data() + done, content.size() - done);
    if (n < 0) {
      ::close(fd);
      ::unlink(tmpl.c_str());
      throw ValidationError("cannot write '" + filename + "': " + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
  ::fchmod(fd, 0644);
  ::close(fd);
  std::error_code ec;
  fs::rename(tmpl, target, ec);
  if (ec) {
    ::unlink(tmpl.c_str());
    throw ValidationError("cannot write '" + filename + "': " + ec.message());
  }
}

}  // namespace stabma::io
