"""
Minimal dense networks with reverse-mode gradients.
"""

from transit_control_app.src.neural.attention import AttentionSpec, attention_aggregate, init_attention, pad_events
from transit_control_app.src.neural.checkpoint import load_checkpoint, save_checkpoint
from transit_control_app.src.neural.embedding import QuantileEmbedding, cosine_features, init_embedding, quantile_embed
from transit_control_app.src.neural.gradcheck import gradient_check, numeric_gradient, relative_error
from transit_control_app.src.neural.network import NetworkSpec, init_mlp, mlp, mlp_backward, mlp_forward
from transit_control_app.src.neural.optim import adam_step, copy_to_target
from transit_control_app.src.neural.parameters import ParameterSet
from transit_control_app.src.neural.tensor import Tensor, grad, no_grad

__all__ = [
    "AttentionSpec",
    "NetworkSpec",
    "ParameterSet",
    "QuantileEmbedding",
    "Tensor",
    "adam_step",
    "attention_aggregate",
    "copy_to_target",
    "cosine_features",
    "grad",
    "gradient_check",
    "init_attention",
    "init_embedding",
    "init_mlp",
    "load_checkpoint",
    "mlp",
    "mlp_backward",
    "mlp_forward",
    "no_grad",
    "numeric_gradient",
    "pad_events",
    "quantile_embed",
    "relative_error",
    "save_checkpoint",
]
