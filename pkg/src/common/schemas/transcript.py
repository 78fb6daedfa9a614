from typing import List, Optional
from pydantic import BaseModel, Field

class EnvelopeRecord(BaseModel):
    """
    Audit view of one envelope: no payload or key material, only digests and counts.
    """
    step: int = Field(..., ge=1)
    sender: int
    receiver: int
    mode: str
    required_key_count: int = Field(..., ge=0)
    group_key_id: Optional[str] = None
    counter: int = Field(..., ge=1)
    payload_digest: str

class TranscriptRecord(BaseModel):
    kind: str
    owner: int
    members: List[int]
    established: bool
    failure: Optional[str] = None
    key_digest: Optional[str] = Field(None, description="blake2b digest of the agreed key")
    steps: int
    envelopes: List[EnvelopeRecord]
