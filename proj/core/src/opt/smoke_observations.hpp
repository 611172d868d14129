#pragma once

// Mid-game snapshots used to smoke-test updated policies. Kept identical to
// tests/fixtures/smoke/*.json, which a test checks.

namespace codeplay::opt::detail {

inline constexpr const char* kSmoke_pong = R"json({"objects":{"Ball":{"x":114,"y":88,"w":2,"h":4,"dx":4,"dy":2},"Enemy":{"x":16,"y":103,"w":4,"h":16,"dx":0,"dy":0},"Player":{"x":140,"y":36,"w":4,"h":16,"dx":0,"dy":4}},"lives":0,"score":-5})json";

inline constexpr const char* kSmoke_breakout = R"json({"objects":{"Ball":{"x":80,"y":114,"w":2,"h":4,"dx":1,"dy":-4},"Player":{"x":56,"y":189,"w":16,"h":4,"dx":0,"dy":0}},"groups":{"AB":[{"x":9,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":17,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":25,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":33,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":41,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":49,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":57,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":65,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":73,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":81,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":89,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":97,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":105,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":113,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":121,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":129,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":137,"y":81,"w":8,"h":6,"dx":0,"dy":0},{"x":145,"y":81,"w":8,"h":6,"dx":0,"dy":0}],"BB":[{"x":9,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":17,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":33,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":41,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":49,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":57,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":65,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":73,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":81,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":89,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":97,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":113,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":121,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":129,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":137,"y":87,"w":8,"h":6,"dx":0,"dy":0},{"x":145,"y":87,"w":8,"h":6,"dx":0,"dy":0}],"GB":[{"x":9,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":17,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":25,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":33,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":41,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":49,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":57,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":65,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":73,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":81,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":89,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":97,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":105,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":113,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":121,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":129,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":137,"y":75,"w":8,"h":6,"dx":0,"dy":0},{"x":145,"y":75,"w":8,"h":6,"dx":0,"dy":0}],"OB":[{"x":9,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":17,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":25,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":33,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":41,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":49,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":57,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":65,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":73,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":81,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":89,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":97,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":105,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":113,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":121,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":129,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":137,"y":63,"w":8,"h":6,"dx":0,"dy":0},{"x":145,"y":63,"w":8,"h":6,"dx":0,"dy":0}],"RB":[{"x":9,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":17,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":25,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":33,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":41,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":49,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":57,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":65,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":73,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":81,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":89,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":97,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":105,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":113,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":121,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":129,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":137,"y":57,"w":8,"h":6,"dx":0,"dy":0},{"x":145,"y":57,"w":8,"h":6,"dx":0,"dy":0}],"YB":[{"x":9,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":17,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":25,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":33,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":41,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":49,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":57,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":65,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":73,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":81,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":89,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":97,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":105,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":113,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":121,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":129,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":137,"y":69,"w":8,"h":6,"dx":0,"dy":0},{"x":145,"y":69,"w":8,"h":6,"dx":0,"dy":0}]},"lives":4,"score":2})json";

inline constexpr const char* kSmoke_space_invaders = R"json({"objects":{"Alien0":{"x":18,"y":43,"w":8,"h":10,"dx":2,"dy":0},"Alien1":{"x":34,"y":43,"w":8,"h":10,"dx":2,"dy":0},"Alien10":{"x":82,"y":57,"w":8,"h":10,"dx":2,"dy":0},"Alien11":{"x":98,"y":57,"w":8,"h":10,"dx":2,"dy":0},"Alien12":{"x":18,"y":71,"w":8,"h":10,"dx":2,"dy":0},"Alien13":{"x":34,"y":71,"w":8,"h":10,"dx":2,"dy":0},"Alien14":{"x":50,"y":71,"w":8,"h":10,"dx":2,"dy":0},"Alien15":{"x":66,"y":71,"w":8,"h":10,"dx":2,"dy":0},"Alien16":{"x":82,"y":71,"w":8,"h":10,"dx":2,"dy":0},"Alien17":{"x":98,"y":71,"w":8,"h":10,"dx":2,"dy":0},"Alien19":{"x":34,"y":85,"w":8,"h":10,"dx":2,"dy":0},"Alien2":{"x":50,"y":43,"w":8,"h":10,"dx":2,"dy":0},"Alien20":{"x":50,"y":85,"w":8,"h":10,"dx":2,"dy":0},"Alien21":{"x":66,"y":85,"w":8,"h":10,"dx":2,"dy":0},"Alien22":{"x":82,"y":85,"w":8,"h":10,"dx":2,"dy":0},"Alien23":{"x":98,"y":85,"w":8,"h":10,"dx":2,"dy":0},"Alien24":{"x":18,"y":99,"w":8,"h":10,"dx":2,"dy":0},"Alien26":{"x":50,"y":99,"w":8,"h":10,"dx":2,"dy":0},"Alien28":{"x":82,"y":99,"w":8,"h":10,"dx":2,"dy":0},"Alien29":{"x":98,"y":99,"w":8,"h":10,"dx":2,"dy":0},"Alien3":{"x":66,"y":43,"w":8,"h":10,"dx":2,"dy":0},"Alien32":{"x":50,"y":113,"w":8,"h":10,"dx":2,"dy":0},"Alien34":{"x":82,"y":113,"w":8,"h":10,"dx":2,"dy":0},"Alien35":{"x":98,"y":113,"w":8,"h":10,"dx":2,"dy":0},"Alien4":{"x":82,"y":43,"w":8,"h":10,"dx":2,"dy":0},"Alien5":{"x":98,"y":43,"w":8,"h":10,"dx":2,"dy":0},"Alien6":{"x":18,"y":57,"w":8,"h":10,"dx":2,"dy":0},"Alien7":{"x":34,"y":57,"w":8,"h":10,"dx":2,"dy":0},"Alien8":{"x":50,"y":57,"w":8,"h":10,"dx":2,"dy":0},"Alien9":{"x":66,"y":57,"w":8,"h":10,"dx":2,"dy":0},"Bullet0":{"x":66,"y":145,"w":1,"h":4,"dx":0,"dy":4},"Player":{"x":64,"y":185,"w":7,"h":10,"dx":3,"dy":0},"Shield0":{"x":42,"y":157,"w":10,"h":9,"dx":0,"dy":0},"Shield1":{"x":74,"y":157,"w":10,"h":9,"dx":0,"dy":0},"Shield2":{"x":106,"y":157,"w":10,"h":9,"dx":0,"dy":0}},"lives":1,"score":50})json";

}  // namespace codeplay::opt::detail
