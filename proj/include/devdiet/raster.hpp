// Minimal software rasterizer: flat-shaded triangle meshes, z-buffer,
// perspective projection. Backs every synthetic generator so dataset
// creation stays deterministic and dependency-free.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "devdiet/image.hpp"

namespace devdiet {

struct Vec3 {
  double x = 0, y = 0, z = 0;
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(const Vec3& v);
Vec3 normalized(const Vec3& v);

struct Color {
  float r = 0, g = 0, b = 0;
};

// Albedo as a function of object-space position (procedural textures hook
// in here). Null means flat base color.
using TextureFn = Color (*)(const Vec3& obj_pos, const void* ctx);

struct Triangle {
  Vec3 a, b, c;       // world space
  Vec3 oa, ob, oc;    // object space (texture lookups)
  Color base;
  const void* tex_ctx = nullptr;
  TextureFn texture = nullptr;
};

struct Camera {
  Vec3 eye{0, 0, 0};
  Vec3 target{0, 0, 1};
  Vec3 up{0, 1, 0};
  double fov_deg = 60;  // vertical
};

struct RenderSettings {
  int size = 64;
  Vec3 light_dir{0.4, 1.0, -0.6};  // toward the light, world space
  double ambient = 0.35;
  Color background{0.5f, 0.5f, 0.5f};
  bool background_gradient = true;
};

class Rasterizer {
 public:
  explicit Rasterizer(const RenderSettings& settings);

  void clear();
  void draw(const std::vector<Triangle>& tris, const Camera& cam);
  Image finish() const;
  // Depth of the nearest surface at a pixel (+inf when background).
  double depth_at(int y, int x) const;

 private:
  RenderSettings settings_;
  Image frame_;
  std::vector<double> zbuf_;
};

// One-call convenience wrapper.
Image render_scene(const std::vector<Triangle>& tris, const Camera& cam,
                   const RenderSettings& settings);

// Unit-ish primitive meshes centered at the origin (object space == local).
std::vector<Triangle> make_cube();
std::vector<Triangle> make_sphere(int seg = 12);
std::vector<Triangle> make_cone(int seg = 16);
std::vector<Triangle> make_cylinder(int seg = 14);
std::vector<Triangle> make_torus(int seg_major = 14, int seg_minor = 8);
std::vector<Triangle> make_pyramid();
std::vector<Triangle> make_prism(int sides = 6);

// Rigid transform helpers (applied to world-space vertices only).
void transform_mesh(std::vector<Triangle>& tris, double scale, double yaw_rad,
                    double pitch_rad, const Vec3& translate);
void set_mesh_color(std::vector<Triangle>& tris, Color c);

}  // namespace devdiet
