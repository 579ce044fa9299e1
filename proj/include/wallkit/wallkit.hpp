#pragma once

#include "wallkit/core.hpp"
#include "wallkit/manifold.hpp"
#include "wallkit/frame.hpp"
#include "wallkit/wallstate.hpp"
#include "wallkit/dynamics.hpp"
#include "wallkit/decoupling.hpp"
#include "wallkit/eternal.hpp"
#include "wallkit/models.hpp"
#include "wallkit/io.hpp"
