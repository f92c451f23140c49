/*
 * Copyright (C) 2026 The nullswarm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#include <nullswarm/svg.hpp>

#include <nullswarm/motion.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace nullswarm {

namespace {

const char* const Palette[] = {
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
  "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& text)
{
  std::string out;
  for (char c : text)
  {
    switch (c)
    {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Maps world meters (y up) onto a canvas (y down) with a uniform scale.
class Canvas
{
public:
  Canvas(double x_min, double x_max, double y_min, double y_max)
    : _x_min(x_min), _y_max(y_max)
  {
    const double span = std::max({x_max - x_min, y_max - y_min, 1.0});
    _scale = MaxPixels / span;
    _width = (x_max - x_min) * _scale + 2 * Margin;
    _height = (y_max - y_min) * _scale + 2 * Margin + TitleBand;
  }

  double px(double x) const { return Margin + (x - _x_min) * _scale; }
  double py(double y) const { return TitleBand + Margin + (_y_max - y) * _scale; }
  double scale() const { return _scale; }

  std::string open(const std::string& title) const
  {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(_width)
      << "\" height=\"" << num(_height) << "\" viewBox=\"0 0 " << num(_width)
      << ' ' << num(_height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
    {
      o << "<text x=\"" << num(Margin) << "\" y=\"20\" font-family=\"sans-serif\""
        << " font-size=\"14\">" << escape(title) << "</text>\n";
    }
    return o.str();
  }

private:
  static constexpr double MaxPixels = 560.0;
  static constexpr double Margin = 20.0;
  static constexpr double TitleBand = 30.0;

  double _x_min;
  double _y_max;
  double _scale = 1.0;
  double _width = 0.0;
  double _height = 0.0;
};

struct Bounds
{
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -std::numeric_limits<double>::infinity();
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();

  void add(Vec2 p)
  {
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }

  void add(const SlotCell& c)
  {
    add(Vec2{c.x_min, c.y_min});
    add(Vec2{c.x_max, c.y_max});
  }

  Canvas canvas() const
  {
    const double pad = 10.0;
    return Canvas(x_min - pad, x_max + pad, y_min - pad, y_max + pad);
  }
};

void cell_rect(std::ostringstream& o, const Canvas& cv, const SlotCell& c,
  const char* stroke, const char* dash)
{
  o << "<rect x=\"" << num(cv.px(c.x_min)) << "\" y=\"" << num(cv.py(c.y_max))
    << "\" width=\"" << num((c.x_max - c.x_min) * cv.scale()) << "\" height=\""
    << num((c.y_max - c.y_min) * cv.scale()) << "\" fill=\"none\" stroke=\""
    << stroke << "\" stroke-dasharray=\"" << dash << "\"/>\n";
}

void jammer_mark(std::ostringstream& o, const Canvas& cv, Vec2 jammer)
{
  const double x = cv.px(jammer.x);
  const double y = cv.py(jammer.y);
  o << "<path d=\"M " << num(x - 6) << ' ' << num(y - 6) << " L " << num(x + 6)
    << ' ' << num(y + 6) << " M " << num(x - 6) << ' ' << num(y + 6) << " L "
    << num(x + 6) << ' ' << num(y - 6) << "\" stroke=\"black\" stroke-width=\"2\"/>\n"
    << "<text x=\"" << num(x + 8) << "\" y=\"" << num(y + 4)
    << "\" font-family=\"sans-serif\" font-size=\"11\">jammer</text>\n";
}

void null_ray(std::ostringstream& o, const Canvas& cv, Vec2 p, double angle_deg,
  const char* color)
{
  const double len = 12.0;
  const double a = deg_to_rad(angle_deg);
  const Vec2 tip{p.x + len * std::cos(a), p.y + len * std::sin(a)};
  o << "<line x1=\"" << num(cv.px(p.x)) << "\" y1=\"" << num(cv.py(p.y))
    << "\" x2=\"" << num(cv.px(tip.x)) << "\" y2=\"" << num(cv.py(tip.y))
    << "\" stroke=\"" << color << "\" stroke-dasharray=\"2 2\"/>\n";
}

void uav_dot(std::ostringstream& o, const Canvas& cv, Vec2 p, const char* color)
{
  o << "<circle cx=\"" << num(cv.px(p.x)) << "\" cy=\"" << num(cv.py(p.y))
    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
}

} // anonymous namespace

std::string trajectory_svg(const std::vector<PositionBlock>& blocks, Vec2 jammer,
  const ScenarioConfig& cfg,
  const std::optional<std::vector<double>>& final_null_angles_deg,
  const std::string& title, bool draw_cells)
{
  Bounds b;
  b.add(jammer);
  for (std::size_t e = 0; e < blocks.size(); ++e)
  {
    for (std::size_t s = 0; s < blocks[e].num_points(); ++s)
    {
      if (draw_cells)
        b.add(slot_cell(e, s, cfg));
      for (std::size_t i = 0; i < blocks[e].num_uavs(); ++i)
        b.add(blocks[e].at(i, s));
    }
  }
  if (blocks.empty())
    b.add(slot_cell(0, 0, cfg));

  const Canvas cv = b.canvas();
  std::ostringstream o;
  o << cv.open(title);
  for (std::size_t e = 0; draw_cells && e < blocks.size(); ++e)
  {
    for (std::size_t s = 0; s < blocks[e].num_points(); ++s)
      cell_rect(o, cv, slot_cell(e, s, cfg), "#bbbbbb", "3 3");
  }

  const std::size_t n = blocks.empty() ? 0 : blocks.front().num_uavs();
  for (std::size_t i = 0; i < n; ++i)
  {
    const char* color = Palette[i % std::size(Palette)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t e = 0; e < blocks.size(); ++e)
    {
      for (std::size_t s = e == 0 ? 0 : 1; s < blocks[e].num_points(); ++s)
      {
        const Vec2 p = blocks[e].at(i, s);
        o << (first ? "" : " ") << num(cv.px(p.x)) << ',' << num(cv.py(p.y));
        first = false;
      }
    }
    o << "\"/>\n";
    for (std::size_t e = 0; e < blocks.size(); ++e)
    {
      for (std::size_t s = e == 0 ? 0 : 1; s < blocks[e].num_points(); ++s)
        uav_dot(o, cv, blocks[e].at(i, s), color);
    }
    if (final_null_angles_deg && i < final_null_angles_deg->size())
    {
      const PositionBlock& last = blocks.back();
      null_ray(o, cv, last.at(i, last.num_points() - 1), (*final_null_angles_deg)[i], color);
    }
  }
  jammer_mark(o, cv, jammer);
  o << "</svg>\n";
  return o.str();
}

std::string formation_svg(const std::vector<Vec2>& positions,
  const std::vector<double>& null_angles_deg, Vec2 jammer,
  const ScenarioConfig& cfg, const std::string& title)
{
  const SlotCell cell = slot_cell(0, 0, cfg);
  Bounds b;
  b.add(cell);
  b.add(jammer);
  for (const Vec2& p : positions)
    b.add(p);

  const Canvas cv = b.canvas();
  std::ostringstream o;
  o << cv.open(title);
  cell_rect(o, cv, cell, "#888888", "4 2");
  for (std::size_t i = 0; i < positions.size(); ++i)
  {
    const char* color = Palette[i % std::size(Palette)];
    if (i < null_angles_deg.size())
      null_ray(o, cv, positions[i], null_angles_deg[i], color);
    uav_dot(o, cv, positions[i], color);
  }
  jammer_mark(o, cv, jammer);
  o << "</svg>\n";
  return o.str();
}

std::string line_chart_svg(const std::vector<double>& values,
  const std::string& title, const std::string& x_label, const std::string& y_label)
{
  const double w = 560.0;
  const double h = 320.0;
  const double left = 70.0;
  const double top = 40.0;
  const double plot_w = w - left - 20.0;
  const double plot_h = h - top - 50.0;

  double lo = 0.0;
  double hi = 1.0;
  if (!values.empty())
  {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
    if (hi == lo)
    {
      hi = lo + 1.0;
      lo -= 1.0;
    }
  }
  const double x_span = values.size() > 1 ? static_cast<double>(values.size() - 1) : 1.0;
  auto px = [&](std::size_t k) { return left + plot_w * static_cast<double>(k) / x_span; };
  auto py = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
    << num(h) << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << num(left) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">"
    << escape(title) << "</text>\n"
    << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w)
    << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  char label[64];
  std::snprintf(label, sizeof(label), "%.4g", hi);
  o << "<text x=\"4\" y=\"" << num(top + 4) << "\" font-family=\"sans-serif\" font-size=\"10\">"
    << label << "</text>\n";
  std::snprintf(label, sizeof(label), "%.4g", lo);
  o << "<text x=\"4\" y=\"" << num(top + plot_h) << "\" font-family=\"sans-serif\" font-size=\"10\">"
    << label << "</text>\n"
    << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(h - 12)
    << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
    << escape(x_label) << "</text>\n"
    << "<text x=\"14\" y=\"" << num(top + plot_h / 2) << "\" font-family=\"sans-serif\""
    << " font-size=\"12\" transform=\"rotate(-90 14 " << num(top + plot_h / 2) << ")\""
    << " text-anchor=\"middle\">" << escape(y_label) << "</text>\n";

  if (!values.empty())
  {
    o << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < values.size(); ++k)
      o << (k ? " " : "") << num(px(k)) << ',' << num(py(values[k]));
    o << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

} // namespace nullswarm
