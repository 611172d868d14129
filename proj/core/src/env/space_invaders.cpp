#include "codeplay/env/space_invaders.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "codeplay/env/physics.hpp"

namespace codeplay::env {

namespace I = physics::invaders;

namespace {

bool overlaps(int ax0, int ax1, int bx0, int bx1) { return ax0 < bx1 && bx0 < ax1; }

/// Does a bullet that moved from prev_y to its current position touch `target`?
bool swept_hit(const ObjectState& bullet, int prev_y, const ObjectState& target) {
  const int y0 = std::min(prev_y, bullet.y);
  const int y1 = std::max(prev_y, bullet.y) + bullet.h;
  return overlaps(bullet.x, bullet.x + bullet.w, target.x, target.x + target.w) &&
         overlaps(y0, y1, target.y, target.y + target.h);
}

bool fires(int action) { return action == 1 || action == 4 || action == 5; }

int lateral(int action) {
  if (action == 2 || action == 4) return 1;
  if (action == 3 || action == 5) return -1;
  return 0;
}

}  // namespace

void SpaceInvadersSim::reset(std::uint64_t seed) {
  rng_.seed(seed);
  events_ = {};
  state_ = {};
  state_.player = {I::kPlayerStartX, I::kPlayerY, I::kPlayerW, I::kPlayerH, 0, 0};
  for (int row = 0; row < I::kRows; ++row) {
    for (int col = 0; col < I::kCols; ++col) {
      Alien a;
      a.id = row * I::kCols + col;
      a.row = row;
      a.body = {I::kGridLeft + col * I::kColSpacing, I::kGridTop + row * I::kRowSpacing,
                I::kAlienW, I::kAlienH, I::kMarchStep, 0};
      state_.aliens.push_back(a);
    }
  }
  for (int i = 0; i < static_cast<int>(I::kShieldX.size()); ++i) {
    state_.shields.push_back(
        {i, {I::kShieldX[static_cast<std::size_t>(i)], I::kShieldY, I::kShieldW, I::kShieldH, 0, 0},
         I::kShieldHitPoints});
  }
  state_.lives = I::kLives;
}

void SpaceInvadersSim::march() {
  auto& s = state_;
  if (s.aliens.empty()) return;
  ++s.march_clock;
  for (auto& a : s.aliens) {
    a.body.dx = s.march_direction * I::kMarchStep;
    a.body.dy = 0;
  }
  if (s.march_clock % I::kMarchPeriod != 0) return;

  int min_x = s.aliens.front().body.x;
  int max_x = min_x + I::kAlienW;
  for (const auto& a : s.aliens) {
    min_x = std::min(min_x, a.body.x);
    max_x = std::max(max_x, a.body.x + a.body.w);
  }
  const bool at_edge = s.march_direction > 0 ? max_x + I::kMarchStep > I::kFieldRight
                                             : min_x - I::kMarchStep < I::kFieldLeft;
  if (at_edge) {
    s.march_direction = -s.march_direction;
    for (auto& a : s.aliens) {
      a.body.y += I::kDescendStep;
      a.body.dx = s.march_direction * I::kMarchStep;
      a.body.dy = I::kDescendStep;
    }
  } else {
    for (auto& a : s.aliens) a.body.x += s.march_direction * I::kMarchStep;
  }
  for (const auto& a : s.aliens)
    if (a.body.y + a.body.h >= I::kPlayerY) s.invaded = true;
}

void SpaceInvadersSim::alien_fire() {
  auto& s = state_;
  ++s.fire_clock;
  if (s.aliens.empty() || s.fire_clock % I::kAlienFirePeriod != 0 ||
      static_cast<int>(s.alien_bullets.size()) >= I::kMaxAlienBullets)
    return;
  std::set<int> columns;
  for (const auto& a : s.aliens) columns.insert(a.id % I::kCols);
  int column = -1;
  if (uniform_int(0, I::kAimedFireDivisor - 1) == 0) {
    // Aimed shot: the column whose centre is nearest the player.
    const int px = s.player.x + s.player.w / 2;
    int best = 0;
    for (const auto& a : s.aliens) {
      const int dist = std::abs(a.body.x + a.body.w / 2 - px);
      if (column < 0 || dist < best) {
        best = dist;
        column = a.id % I::kCols;
      }
    }
  } else {
    auto it = columns.begin();
    std::advance(it, uniform_int(0, static_cast<int>(columns.size()) - 1));
    column = *it;
  }
  const Alien* shooter = nullptr;
  for (const auto& a : s.aliens)
    if (a.id % I::kCols == column && (!shooter || a.body.y > shooter->body.y)) shooter = &a;
  const auto& b = shooter->body;
  s.alien_bullets.push_back(
      {b.x + b.w / 2, b.y + b.h, I::kBulletW, I::kBulletH, 0, I::kAlienBulletDy});
}

int SpaceInvadersSim::move_player_bullet() {
  auto& s = state_;
  if (s.player_bullets.empty()) return 0;
  auto& bullet = s.player_bullets.front();
  const int prev_y = bullet.y;
  bullet.y += bullet.dy;

  // Nearest obstacle along the upward path: largest bottom edge.
  Shield* shield_hit = nullptr;
  Alien* alien_hit = nullptr;
  int best_bottom = -1;
  for (auto& sh : s.shields) {
    if (swept_hit(bullet, prev_y, sh.body) && sh.body.y + sh.body.h > best_bottom) {
      best_bottom = sh.body.y + sh.body.h;
      shield_hit = &sh;
    }
  }
  for (auto& a : s.aliens) {
    if (swept_hit(bullet, prev_y, a.body) && a.body.y + a.body.h > best_bottom) {
      best_bottom = a.body.y + a.body.h;
      alien_hit = &a;
      shield_hit = nullptr;
    }
  }

  int reward = 0;
  if (alien_hit) {
    reward = I::kRowPoints[static_cast<std::size_t>(alien_hit->row)];
    const int id = alien_hit->id;
    std::erase_if(s.aliens, [id](const Alien& a) { return a.id == id; });
    s.player_bullets.clear();
  } else if (shield_hit) {
    if (--shield_hit->hit_points <= 0) {
      const int id = shield_hit->id;
      std::erase_if(s.shields, [id](const Shield& sh) { return sh.id == id; });
    }
    s.player_bullets.clear();
  } else if (bullet.y < I::kBulletTopLimit) {
    s.player_bullets.clear();
  }
  return reward;
}

void SpaceInvadersSim::move_alien_bullets() {
  auto& s = state_;
  std::vector<ObjectState> kept;
  for (auto bullet : s.alien_bullets) {
    const int prev_y = bullet.y;
    bullet.y += bullet.dy;
    bool consumed = false;
    for (auto it = s.shields.begin(); it != s.shields.end(); ++it) {
      if (swept_hit(bullet, prev_y, it->body)) {
        if (--it->hit_points <= 0) s.shields.erase(it);
        consumed = true;
        break;
      }
    }
    if (!consumed && swept_hit(bullet, prev_y, s.player)) {
      --s.lives;
      events_.life_lost = true;
      consumed = true;
    }
    if (!consumed && bullet.y <= I::kBulletBottomLimit) kept.push_back(bullet);
  }
  s.alien_bullets = std::move(kept);
}

int SpaceInvadersSim::advance(int action) {
  events_ = {};
  auto& s = state_;
  if (s.cooldown > 0) --s.cooldown;

  const int move = lateral(action) * I::kPlayerSpeed;
  const int x = std::clamp(s.player.x + move, I::kPlayerMinX, I::kPlayerMaxX);
  s.player.dx = x - s.player.x;
  s.player.x = x;

  if (fires(action) && s.player_bullets.empty() && s.cooldown == 0) {
    s.player_bullets.push_back({s.player.x + s.player.w / 2, I::kPlayerY - I::kBulletH,
                                I::kBulletW, I::kBulletH, 0, I::kPlayerBulletDy});
    s.cooldown = I::kFireCooldown;
    events_.bullet_fired = true;
  }

  const int reward = move_player_bullet();
  march();
  alien_fire();
  move_alien_bullets();

  if (s.invaded) s.lives = 0;
  s.lives = std::max(s.lives, 0);
  s.score += reward;
  return reward;
}

bool SpaceInvadersSim::game_over() const {
  return state_.lives <= 0 || state_.aliens.empty();
}

Observation SpaceInvadersSim::observe() const {
  Observation obs;
  obs.objects.emplace("Player", state_.player);
  for (const auto& a : state_.aliens) obs.objects.emplace("Alien" + std::to_string(a.id), a.body);
  int n = 0;
  for (const auto& b : state_.player_bullets) obs.objects.emplace("Bullet" + std::to_string(n++), b);
  for (const auto& b : state_.alien_bullets) obs.objects.emplace("Bullet" + std::to_string(n++), b);
  for (const auto& sh : state_.shields) obs.objects.emplace("Shield" + std::to_string(sh.id), sh.body);
  obs.lives = state_.lives;
  obs.score = state_.score;
  return obs;
}

}  // namespace codeplay::env
