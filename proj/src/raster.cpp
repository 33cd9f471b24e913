#include "devdiet/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace devdiet {

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v) {
  double n = norm(v);
  return n > 0 ? v * (1.0 / n) : v;
}

Rasterizer::Rasterizer(const RenderSettings& settings) : settings_(settings) {
  clear();
}

void Rasterizer::clear() {
  const int s = settings_.size;
  frame_ = Image(s, s);
  zbuf_.assign(size_t(s) * s, std::numeric_limits<double>::infinity());
  for (int y = 0; y < s; ++y) {
    float shade = settings_.background_gradient ? 0.85f - 0.45f * float(y) / float(s) : 1.0f;
    for (int x = 0; x < s; ++x) {
      frame_.at(y, x, 0) = settings_.background.r * shade;
      frame_.at(y, x, 1) = settings_.background.g * shade;
      frame_.at(y, x, 2) = settings_.background.b * shade;
    }
  }
}

double Rasterizer::depth_at(int y, int x) const {
  return zbuf_[size_t(y) * settings_.size + x];
}

void Rasterizer::draw(const std::vector<Triangle>& tris, const Camera& cam) {
  const int S = settings_.size;
  // Camera basis (right-handed, looking down +forward).
  Vec3 fwd = normalized(cam.target - cam.eye);
  Vec3 right = normalized(cross(fwd, cam.up));
  Vec3 up = cross(right, fwd);
  const double f = 1.0 / std::tan(cam.fov_deg * M_PI / 360.0);
  const double near_z = 0.05;
  const Vec3 light = normalized(settings_.light_dir);

  for (const auto& tri : tris) {
    auto to_cam = [&](const Vec3& p) {
      Vec3 d = p - cam.eye;
      return Vec3{dot(d, right), dot(d, up), dot(d, fwd)};
    };
    Vec3 a = to_cam(tri.a), b = to_cam(tri.b), c = to_cam(tri.c);
    if (a.z < near_z && b.z < near_z && c.z < near_z) continue;
    // Cheap near-plane handling: clamp rather than clip; scenes keep
    // geometry comfortably in front of the camera.
    a.z = std::max(a.z, near_z);
    b.z = std::max(b.z, near_z);
    c.z = std::max(c.z, near_z);

    auto project = [&](const Vec3& p) {
      double px = (p.x * f / p.z * 0.5 + 0.5) * S;
      double py = (0.5 - p.y * f / p.z * 0.5) * S;
      return std::array<double, 3>{px, py, p.z};
    };
    auto pa = project(a), pb = project(b), pc = project(c);

    // Flat shade from the world-space normal.
    Vec3 n = normalized(cross(tri.b - tri.a, tri.c - tri.a));
    double lambert = std::fabs(dot(n, light));
    double shade = settings_.ambient + (1.0 - settings_.ambient) * lambert;

    double area = (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0]);
    if (std::fabs(area) < 1e-12) continue;

    int x0 = std::max(0, int(std::floor(std::min({pa[0], pb[0], pc[0]}))));
    int x1 = std::min(S - 1, int(std::ceil(std::max({pa[0], pb[0], pc[0]}))));
    int y0 = std::max(0, int(std::floor(std::min({pa[1], pb[1], pc[1]}))));
    int y1 = std::min(S - 1, int(std::ceil(std::max({pa[1], pb[1], pc[1]}))));

    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        double px = x + 0.5, py = y + 0.5;
        double w0 = ((pb[0] - pa[0]) * (py - pa[1]) - (pb[1] - pa[1]) * (px - pa[0])) / area;
        double w1 = ((pc[0] - pb[0]) * (py - pb[1]) - (pc[1] - pb[1]) * (px - pb[0])) / area;
        double w2 = ((pa[0] - pc[0]) * (py - pc[1]) - (pa[1] - pc[1]) * (px - pc[0])) / area;
        // Inside test robust to either winding.
        if (!((w0 >= 0 && w1 >= 0 && w2 >= 0) || (w0 <= 0 && w1 <= 0 && w2 <= 0))) continue;
        double l0 = w1, l1 = w2, l2 = w0;  // barycentric wrt (a,b,c)
        double zs = l0 * pa[2] + l1 * pb[2] + l2 * pc[2];
        size_t idx = size_t(y) * S + x;
        if (zs >= zbuf_[idx]) continue;
        zbuf_[idx] = zs;
        Color alb = tri.base;
        if (tri.texture) {
          Vec3 op = tri.oa * l0 + tri.ob * l1 + tri.oc * l2;
          alb = tri.texture(op, tri.tex_ctx);
        }
        frame_.at(y, x, 0) = float(std::min(1.0, alb.r * shade));
        frame_.at(y, x, 1) = float(std::min(1.0, alb.g * shade));
        frame_.at(y, x, 2) = float(std::min(1.0, alb.b * shade));
      }
    }
  }
}

Image Rasterizer::finish() const { return frame_; }

Image render_scene(const std::vector<Triangle>& tris, const Camera& cam,
                   const RenderSettings& settings) {
  Rasterizer r(settings);
  r.draw(tris, cam);
  return r.finish();
}

namespace {

void push_quad(std::vector<Triangle>& out, const Vec3& a, const Vec3& b, const Vec3& c,
               const Vec3& d) {
  out.push_back({a, b, c, a, b, c, {1, 1, 1}, nullptr, nullptr});
  out.push_back({a, c, d, a, c, d, {1, 1, 1}, nullptr, nullptr});
}

void push_tri(std::vector<Triangle>& out, const Vec3& a, const Vec3& b, const Vec3& c) {
  out.push_back({a, b, c, a, b, c, {1, 1, 1}, nullptr, nullptr});
}

}  // namespace

std::vector<Triangle> make_cube() {
  std::vector<Triangle> t;
  const double s = 0.5;
  Vec3 v[8] = {{-s, -s, -s}, {s, -s, -s}, {s, s, -s}, {-s, s, -s},
               {-s, -s, s},  {s, -s, s},  {s, s, s},  {-s, s, s}};
  push_quad(t, v[0], v[1], v[2], v[3]);
  push_quad(t, v[5], v[4], v[7], v[6]);
  push_quad(t, v[4], v[0], v[3], v[7]);
  push_quad(t, v[1], v[5], v[6], v[2]);
  push_quad(t, v[3], v[2], v[6], v[7]);
  push_quad(t, v[4], v[5], v[1], v[0]);
  return t;
}

std::vector<Triangle> make_sphere(int seg) {
  std::vector<Triangle> t;
  auto pt = [&](int i, int j) {
    double theta = M_PI * i / seg;
    double phi = 2 * M_PI * j / (2 * seg);
    return Vec3{0.5 * std::sin(theta) * std::cos(phi), 0.5 * std::cos(theta),
                0.5 * std::sin(theta) * std::sin(phi)};
  };
  for (int i = 0; i < seg; ++i)
    for (int j = 0; j < 2 * seg; ++j) {
      Vec3 a = pt(i, j), b = pt(i + 1, j), c = pt(i + 1, j + 1), d = pt(i, j + 1);
      if (i > 0) push_tri(t, a, b, d);
      if (i < seg - 1) push_tri(t, b, c, d);
    }
  return t;
}

std::vector<Triangle> make_cone(int seg) {
  std::vector<Triangle> t;
  Vec3 apex{0, 0.5, 0}, base_c{0, -0.5, 0};
  for (int j = 0; j < seg; ++j) {
    double p0 = 2 * M_PI * j / seg, p1 = 2 * M_PI * (j + 1) / seg;
    Vec3 a{0.5 * std::cos(p0), -0.5, 0.5 * std::sin(p0)};
    Vec3 b{0.5 * std::cos(p1), -0.5, 0.5 * std::sin(p1)};
    push_tri(t, apex, a, b);
    push_tri(t, base_c, b, a);
  }
  return t;
}

std::vector<Triangle> make_cylinder(int seg) {
  std::vector<Triangle> t;
  for (int j = 0; j < seg; ++j) {
    double p0 = 2 * M_PI * j / seg, p1 = 2 * M_PI * (j + 1) / seg;
    Vec3 a0{0.4 * std::cos(p0), -0.5, 0.4 * std::sin(p0)};
    Vec3 b0{0.4 * std::cos(p1), -0.5, 0.4 * std::sin(p1)};
    Vec3 a1{0.4 * std::cos(p0), 0.5, 0.4 * std::sin(p0)};
    Vec3 b1{0.4 * std::cos(p1), 0.5, 0.4 * std::sin(p1)};
    push_quad(t, a0, b0, b1, a1);
    push_tri(t, Vec3{0, 0.5, 0}, a1, b1);
    push_tri(t, Vec3{0, -0.5, 0}, b0, a0);
  }
  return t;
}

std::vector<Triangle> make_torus(int seg_major, int seg_minor) {
  std::vector<Triangle> t;
  const double R = 0.35, r = 0.15;
  auto pt = [&](int i, int j) {
    double u = 2 * M_PI * i / seg_major, v = 2 * M_PI * j / seg_minor;
    double cx = (R + r * std::cos(v));
    return Vec3{cx * std::cos(u), r * std::sin(v), cx * std::sin(u)};
  };
  for (int i = 0; i < seg_major; ++i)
    for (int j = 0; j < seg_minor; ++j) {
      Vec3 a = pt(i, j), b = pt(i + 1, j), c = pt(i + 1, j + 1), d = pt(i, j + 1);
      push_tri(t, a, b, d);
      push_tri(t, b, c, d);
    }
  return t;
}

std::vector<Triangle> make_pyramid() {
  std::vector<Triangle> t;
  Vec3 apex{0, 0.5, 0};
  Vec3 v[4] = {{-0.45, -0.5, -0.45}, {0.45, -0.5, -0.45}, {0.45, -0.5, 0.45}, {-0.45, -0.5, 0.45}};
  for (int j = 0; j < 4; ++j) push_tri(t, apex, v[j], v[(j + 1) % 4]);
  push_quad(t, v[3], v[2], v[1], v[0]);
  return t;
}

std::vector<Triangle> make_prism(int sides) {
  std::vector<Triangle> t;
  for (int j = 0; j < sides; ++j) {
    double p0 = 2 * M_PI * j / sides, p1 = 2 * M_PI * (j + 1) / sides;
    Vec3 a0{0.45 * std::cos(p0), -0.35, 0.45 * std::sin(p0)};
    Vec3 b0{0.45 * std::cos(p1), -0.35, 0.45 * std::sin(p1)};
    Vec3 a1{0.45 * std::cos(p0), 0.35, 0.45 * std::sin(p0)};
    Vec3 b1{0.45 * std::cos(p1), 0.35, 0.45 * std::sin(p1)};
    push_quad(t, a0, b0, b1, a1);
    push_tri(t, Vec3{0, 0.35, 0}, a1, b1);
    push_tri(t, Vec3{0, -0.35, 0}, b0, a0);
  }
  return t;
}

void transform_mesh(std::vector<Triangle>& tris, double scale, double yaw_rad,
                    double pitch_rad, const Vec3& translate) {
  const double cy = std::cos(yaw_rad), sy = std::sin(yaw_rad);
  const double cp = std::cos(pitch_rad), sp = std::sin(pitch_rad);
  auto xf = [&](const Vec3& p) {
    Vec3 s = p * scale;
    // yaw about Y, then pitch about X
    Vec3 r1{s.x * cy + s.z * sy, s.y, -s.x * sy + s.z * cy};
    Vec3 r2{r1.x, r1.y * cp - r1.z * sp, r1.y * sp + r1.z * cp};
    return r2 + translate;
  };
  for (auto& t : tris) {
    t.a = xf(t.a);
    t.b = xf(t.b);
    t.c = xf(t.c);
  }
}

void set_mesh_color(std::vector<Triangle>& tris, Color c) {
  for (auto& t : tris) t.base = c;
}

}  // namespace devdiet
