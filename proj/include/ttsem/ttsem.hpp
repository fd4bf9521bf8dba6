#pragma once

#include "ttsem/rational.hpp"
#include "ttsem/plf.hpp"
#include "ttsem/interval_domain.hpp"
#include "ttsem/omega.hpp"
#include "ttsem/modalities.hpp"
#include "ttsem/numerics.hpp"
#include "ttsem/calculus.hpp"
#include "ttsem/walks.hpp"
#include "ttsem/contracts.hpp"
#include "ttsem/temporal_logic.hpp"
