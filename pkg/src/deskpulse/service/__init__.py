"""HTTP service and its file-backed store."""

from .app import create_app
from .schedule import Prompt, pending_prompt, prompt_times, prompt_token
from .store import MODALITIES, UserDayStore

__all__ = [
    "create_app",
    "Prompt",
    "pending_prompt",
    "prompt_times",
    "prompt_token",
    "MODALITIES",
    "UserDayStore",
]
