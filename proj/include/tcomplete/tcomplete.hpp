#pragma once

#include "tcomplete/admm.hpp"
#include "tcomplete/completion.hpp"
#include "tcomplete/cur.hpp"
#include "tcomplete/error.hpp"
#include "tcomplete/fourier.hpp"
#include "tcomplete/image.hpp"
#include "tcomplete/io.hpp"
#include "tcomplete/metrics.hpp"
#include "tcomplete/prox.hpp"
#include "tcomplete/random.hpp"
#include "tcomplete/regularizers.hpp"
#include "tcomplete/sampling.hpp"
#include "tcomplete/sweep.hpp"
#include "tcomplete/synth.hpp"
#include "tcomplete/talgebra.hpp"
#include "tcomplete/tensor3.hpp"
