use super::delivery::check_demands;
use super::{
    associate, build_g_array, deliver, helper_placement, rate, user_key_placement, Association,
    DeliveryOptions, FileLayout, GArray, HelperPlacement, KeyPlacement, Library, RandomSource,
    RateReport, RngSource, SchemeError, SystemConfig, Transmission, UserView,
};
use crate::gfmds::ShareVector;
use crate::pda::Pda;
use crate::Rational;

/// State of one run, from placement through delivery.
#[derive(Debug, Clone)]
pub struct Session {
    config: SystemConfig,
    pda: Pda,
    association: Association,
    placement: HelperPlacement,
    g: GArray,
    keys: KeyPlacement,
    layout: Option<FileLayout>,
    demands: Option<Vec<usize>>,
    transmissions: Option<Vec<Transmission>>,
    options: DeliveryOptions,
}

impl Session {
    /// Runs helper placement, association and user-cache placement on
    /// symbol-level files. `src` supplies the sharing randomness first (file
    /// by file) and then the pads (in pair order).
    pub fn place(
        pda: &Pda,
        config: &SystemConfig,
        files: &[Vec<ShareVector>],
        assignment: &[usize],
        src: &mut dyn RandomSource,
    ) -> Result<Self, SchemeError> {
        let placement = helper_placement(pda, config, files, src)?;
        let association = associate(config, assignment)?;
        let g = build_g_array(pda, &association);
        let keys = user_key_placement(&g, &association, placement.share_len(), src);
        Ok(Self {
            config: config.clone(),
            pda: pda.clone(),
            association,
            placement,
            g,
            keys,
            layout: None,
            demands: None,
            transmissions: None,
            options: DeliveryOptions::default(),
        })
    }

    /// [`Session::place`] on byte files, with randomness from the
    /// configured seed.
    pub fn from_library(
        pda: &Pda,
        config: &SystemConfig,
        library: &Library,
        assignment: &[usize],
    ) -> Result<Self, SchemeError> {
        if library.file_bytes() != config.file_bytes {
            return Err(SchemeError::FileLength {
                index: 0,
                expected: config.file_bytes,
                got: library.file_bytes(),
            });
        }
        let layout = FileLayout::new(
            config.file_bytes,
            config.field.bits(),
            pda.rows() - pda.stars(),
        );
        let files = library.to_symbols(&layout)?;
        let mut src = RngSource::new(config.seed, config.field.bits());
        let mut session = Self::place(pda, config, &files, assignment, &mut src)?;
        session.layout = Some(layout);
        Ok(session)
    }

    pub fn deliver(
        &mut self,
        demands: &[usize],
        options: DeliveryOptions,
    ) -> Result<&[Transmission], SchemeError> {
        let tx = deliver(&self.g, &self.placement, &self.keys, demands, options)?;
        self.demands = Some(demands.to_vec());
        self.options = options;
        Ok(self.transmissions.insert(tx))
    }

    pub fn config(&self) -> &SystemConfig {
        &self.config
    }

    pub fn pda(&self) -> &Pda {
        &self.pda
    }

    /// The PDA with columns in relabelled (nonincreasing-load) order.
    pub fn relabelled_pda(&self) -> Pda {
        self.pda.permute_columns(self.association.cache_order())
    }

    pub fn association(&self) -> &Association {
        &self.association
    }

    pub fn placement(&self) -> &HelperPlacement {
        &self.placement
    }

    pub fn g_array(&self) -> &GArray {
        &self.g
    }

    pub fn keys(&self) -> &KeyPlacement {
        &self.keys
    }

    pub fn layout(&self) -> Option<&FileLayout> {
        self.layout.as_ref()
    }

    pub fn demands(&self) -> Option<&[usize]> {
        self.demands.as_deref()
    }

    pub fn transmissions(&self) -> Option<&[Transmission]> {
        self.transmissions.as_deref()
    }

    pub fn delivery_options(&self) -> DeliveryOptions {
        self.options
    }

    pub fn user_view(&self, user: usize) -> Result<UserView<'_>, SchemeError> {
        let (Some(demands), Some(transmissions)) = (&self.demands, &self.transmissions) else {
            return Err(SchemeError::NotDelivered);
        };
        check_demands(demands, self.association.num_users(), self.placement.num_files())?;
        if user >= self.association.num_users() {
            return Err(SchemeError::UserCount {
                expected: self.association.num_users(),
                got: user + 1,
            });
        }
        Ok(UserView {
            user,
            cache: self.association.original_cache_of(user),
            g: &self.g,
            placement: &self.placement,
            keys: &self.keys,
            demands,
            transmissions,
        })
    }

    pub fn decode(&self, user: usize) -> Result<Vec<ShareVector>, SchemeError> {
        self.user_view(user)?.decode()
    }

    /// Decoded bytes with padding removed. Only for sessions built from a
    /// [`Library`].
    pub fn decode_bytes(&self, user: usize) -> Result<Vec<u8>, SchemeError> {
        let layout = self
            .layout
            .ok_or_else(|| SchemeError::Internal("session has no byte layout".into()))?;
        layout.join(&self.decode(user)?)
    }

    /// Formula rate for this association.
    pub fn rate_report(&self) -> RateReport {
        rate(&self.relabelled_pda(), self.association.profile())
            .expect("relabelled profile is nonincreasing")
    }

    /// Transmissions sent divided by `F − Z`.
    pub fn measured_rate(&self) -> Result<Rational, SchemeError> {
        let tx = self.transmissions.as_ref().ok_or(SchemeError::NotDelivered)?;
        Ok(Rational::new(
            tx.len() as i64,
            (self.pda.rows() - self.pda.stars()) as i64,
        ))
    }
}
