use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, RwLock};
use std::time::SystemTime;

use ontoseer_core::odp::OntologyMeta;
use ontoseer_core::ontoclean::{profile_from_answers, Answers, MetaProfile};
use ontoseer_core::ontology::{AxiomKind, Iri, OntologyDocument};

use crate::error::ServiceError;

#[derive(Debug, Default)]
struct Mutable {
    meta: OntologyMeta,
    answers: BTreeMap<Iri, Answers>,
}

#[derive(Debug)]
pub struct Session {
    pub id: String,
    pub created_at: SystemTime,
    working: Arc<OntologyDocument>,
    state: Mutex<Mutable>,
}

impl Session {
    pub fn working(&self) -> Arc<OntologyDocument> {
        self.working.clone()
    }

    pub fn meta(&self) -> OntologyMeta {
        self.state.lock().expect("session lock").meta.clone()
    }

    pub fn set_meta(&self, meta: OntologyMeta) {
        self.state.lock().expect("session lock").meta = meta;
    }

    pub fn answers(&self) -> BTreeMap<Iri, Answers> {
        self.state.lock().expect("session lock").answers.clone()
    }

    /// Answered questions overwrite earlier ones; unanswered ones keep their
    /// previous value.
    pub fn merge_answers(&self, posted: Vec<(Iri, Answers)>) {
        let mut state = self.state.lock().expect("session lock");
        for (class, new) in posted {
            let slot = state.answers.entry(class).or_default();
            slot.q1 = new.q1.or(slot.q1);
            slot.q2 = new.q2.or(slot.q2);
            slot.q3 = new.q3.or(slot.q3);
        }
    }

    pub fn profiles(&self) -> BTreeMap<Iri, MetaProfile> {
        self.answers()
            .into_iter()
            .map(|(class, a)| (class.clone(), profile_from_answers(class, a)))
            .collect()
    }

    /// Classes on at least one named subclass edge.
    pub fn hierarchy_classes(&self) -> BTreeSet<Iri> {
        self.working
            .axioms
            .iter()
            .filter(|a| a.kind == AxiomKind::SubClassOf)
            .filter_map(|a| Some((&a.subject, a.object.as_ref()?)))
            .filter(|(sub, sup)| sub != sup)
            .flat_map(|(sub, sup)| [sub.clone(), sup.clone()])
            .collect()
    }
}

#[derive(Debug, Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Session>>>,
}

impl SessionStore {
    pub fn insert(&self, working: OntologyDocument) -> String {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Session {
            id: id.clone(),
            created_at: SystemTime::now(),
            working: Arc::new(working),
            state: Mutex::default(),
        };
        self.sessions
            .write()
            .expect("session store lock")
            .insert(id.clone(), Arc::new(session));
        id
    }

    pub fn get(&self, id: &str) -> Result<Arc<Session>, ServiceError> {
        self.sessions
            .read()
            .expect("session store lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::UnknownSession(id.to_string()))
    }
}
